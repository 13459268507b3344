//! Min-sum successive-cancellation kernels.
//!
//! A node of length `2^s` splits into two halves. The left child sees
//! `f(α[i], α[i + h])`, the LLR of `x[i] ⊕ x[i + h]`; the right child sees
//! `g(α[i], α[i + h], β_left[i])`, the LLR of `x[i + h]`. The node codeword is
//! rebuilt as `[β_left ⊕ β_right, β_right]`.
//!
//! `sgn(0)` is `+1` throughout, so a zero LLR decides bit 0.

#[inline]
pub fn sgn(a: f64) -> f64 {
    if a < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Hard decision `(1 - sgn(a)) / 2`.
#[inline]
pub fn hard(a: f64) -> u8 {
    (a < 0.0) as u8
}

#[inline]
pub fn f_op(a: f64, b: f64) -> f64 {
    a.abs().min(b.abs()) * sgn(a) * sgn(b)
}

#[inline]
pub fn g_op(a: f64, b: f64, c: u8) -> f64 {
    if c == 0 {
        b + a
    } else {
        b - a
    }
}

pub fn f_stage(alpha: &[f64]) -> Vec<f64> {
    let h = alpha.len() / 2;
    let (lo, hi) = alpha.split_at(h);
    lo.iter().zip(hi).map(|(&a, &b)| f_op(a, b)).collect()
}

pub fn g_stage(alpha: &[f64], beta_left: &[u8]) -> Vec<f64> {
    let h = alpha.len() / 2;
    assert_eq!(
        beta_left.len(),
        h,
        "left estimate must be half the node length"
    );
    let (lo, hi) = alpha.split_at(h);
    lo.iter()
        .zip(hi)
        .zip(beta_left)
        .map(|((&a, &b), &c)| g_op(a, b, c))
        .collect()
}

/// Node codeword `[β_left ⊕ β_right, β_right]`.
pub fn combine(beta_left: &[u8], beta_right: &[u8]) -> Vec<u8> {
    assert_eq!(beta_left.len(), beta_right.len());
    let mut out: Vec<u8> = beta_left
        .iter()
        .zip(beta_right)
        .map(|(&l, &r)| l ^ r)
        .collect();
    out.extend_from_slice(beta_right);
    out
}

/// LLR-domain path metric update for one bit decision.
#[inline]
pub fn pm_update(pm: f64, alpha_bit: f64, u_hat: u8) -> f64 {
    if u_hat != hard(alpha_bit) {
        pm + alpha_bit.abs()
    } else {
        pm
    }
}

/// Bipolar view `1 - 2β`.
pub fn bipolar(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| 1.0 - 2.0 * b as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::RmCode;

    #[test]
    fn scalar_kernels() {
        assert_eq!(f_op(2.0, -3.0), -2.0);
        assert_eq!(f_op(0.0, 5.0), 0.0);
        assert_eq!(f_op(-1.0, -4.0), 1.0);
        assert_eq!(g_op(2.0, -3.0, 0), -1.0);
        assert_eq!(g_op(2.0, -3.0, 1), -5.0);
        assert_eq!(g_op(0.0, 1.25, 1), 1.25);
    }

    #[test]
    fn stage_kernels() {
        assert_eq!(f_stage(&[2.0, -3.0]), vec![-2.0]);
        assert_eq!(f_stage(&[1.0, 2.0, 3.0, 4.0]), vec![1.0, 2.0]);
        let a = [0.5, -2.0, 3.0, 1.5, -0.25, 7.0, 2.0, -1.0];
        let scaled: Vec<f64> = a.iter().map(|x| 3.0 * x).collect();
        let f1: Vec<f64> = f_stage(&a).iter().map(|x| 3.0 * x).collect();
        assert_eq!(f_stage(&scaled), f1);

        assert_eq!(g_stage(&[2.0, -3.0], &[0]), vec![-1.0]);
        assert_eq!(g_stage(&a, &[0; 4]), vec![0.25, 5.0, 5.0, 0.5]);
        assert_eq!(g_stage(&a, &[1; 4]), vec![-0.75, 9.0, -1.0, -2.5]);
    }

    #[test]
    fn combine_rebuilds_codewords() {
        assert_eq!(combine(&[0, 0], &[0, 0]), vec![0; 4]);
        let c = RmCode::new(1, 3).unwrap();
        for x in c.codeword_set().unwrap() {
            let left: Vec<u8> = (0..4).map(|i| x[i] ^ x[i + 4]).collect();
            let right = x[4..].to_vec();
            assert_eq!(combine(&left, &right), x);
        }
        // equal halves cancel in the first half
        let out = combine(&[1, 0, 1, 1], &[1, 0, 1, 1]);
        assert_eq!(&out[..4], &[0, 0, 0, 0]);
    }

    #[test]
    fn path_metric_update() {
        assert_eq!(pm_update(0.0, 1.5, 0), 0.0);
        assert_eq!(pm_update(0.0, 1.5, 1), 1.5);
        assert_eq!(pm_update(2.0, -0.5, 1), 2.0);
        assert_eq!(pm_update(2.0, -0.5, 0), 2.5);
    }

    /// Plain SC over the full binary tree of a code, with frozen bits forced to 0.
    fn sc_decode(alpha: &[f64], frozen: &[bool]) -> Vec<u8> {
        if alpha.len() == 1 {
            return vec![if frozen[0] { 0 } else { hard(alpha[0]) }];
        }
        let h = alpha.len() / 2;
        let left = sc_decode(&f_stage(alpha), &frozen[..h]);
        let right = sc_decode(&g_stage(alpha, &left), &frozen[h..]);
        combine(&left, &right)
    }

    #[test]
    fn noiseless_sc_round_trip() {
        let code = RmCode::new(2, 5).unwrap();
        for j in 0..40u64 {
            let msg: Vec<u8> = (0..code.k())
                .map(|t| (((j * 7919) >> (t % 13)) & 1) as u8)
                .collect();
            let x = code.encode_message(&msg).unwrap();
            let llr: Vec<f64> = x
                .iter()
                .map(|&b| if b == 0 { 20.0 } else { -20.0 })
                .collect();
            assert_eq!(sc_decode(&llr, code.frozen()), x);
        }
    }
}
