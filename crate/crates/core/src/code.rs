//! Reed-Muller code construction and encoding.
//!
//! Bit index `i` of a length-`2^m` codeword is read through its binary
//! expansion `b_{m-1} .. b_0`, `b_0` being the least significant bit. Row `i`
//! of `G^{⊗m}` (with `G = [[1,0],[1,1]]`) has weight `2^popcount(i)`, so the
//! information set of RM(r,m) is every index with `popcount(i) >= m - r`.

use crate::error::{Error, Result};

/// Largest supported log-length.
pub const MAX_M: usize = 16;

/// Largest dimension accepted by [`RmCode::codeword_set`].
pub const MAX_ENUM_K: usize = 20;

/// Parameters and frozen/information partition of RM(r, m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RmCode {
    r: usize,
    m: usize,
    n: usize,
    k: usize,
    d: usize,
    frozen: Vec<bool>,
    info: Vec<usize>,
}

impl RmCode {
    pub fn new(r: usize, m: usize) -> Result<Self> {
        if !(1..=MAX_M).contains(&m) || r > m {
            return Err(Error::InvalidCode { r, m, max_m: MAX_M });
        }
        let n = 1usize << m;
        let frozen: Vec<bool> = (0..n).map(|i| (i.count_ones() as usize) < m - r).collect();
        let info: Vec<usize> = (0..n).filter(|&i| !frozen[i]).collect();
        Ok(RmCode {
            r,
            m,
            n,
            k: info.len(),
            d: 1 << (m - r),
            frozen,
            info,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Code length `2^m`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance `2^(m-r)`.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    /// Sorted information indices.
    pub fn info(&self) -> &[usize] {
        &self.info
    }

    /// Computes `x = u G^{⊗m}`. Frozen positions of `u` must be zero.
    pub fn encode(&self, u: &[u8]) -> Result<Vec<u8>> {
        if u.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: u.len(),
            });
        }
        if let Some(index) = (0..self.n).find(|&i| self.frozen[i] && u[i] != 0) {
            return Err(Error::FrozenBitSet { index });
        }
        let mut x = u.to_vec();
        polar_transform(&mut x);
        Ok(x)
    }

    /// Places `K` message bits on the information set and encodes them.
    pub fn encode_message(&self, msg: &[u8]) -> Result<Vec<u8>> {
        if msg.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: msg.len(),
            });
        }
        let mut u = vec![0u8; self.n];
        for (&i, &b) in self.info.iter().zip(msg) {
            u[i] = b & 1;
        }
        polar_transform(&mut u);
        Ok(u)
    }

    /// Enumerates all `2^K` codewords. Codeword `j` encodes the message whose
    /// `t`-th bit (placed at `info[t]`) is bit `t` of `j`.
    pub fn codeword_set(&self) -> Result<Vec<Vec<u8>>> {
        if self.k > MAX_ENUM_K {
            return Err(Error::TooManyCodewords {
                k: self.k,
                limit: MAX_ENUM_K,
            });
        }
        let mut out = Vec::with_capacity(1 << self.k);
        let mut u = vec![0u8; self.n];
        for j in 0..(1usize << self.k) {
            u.iter_mut().for_each(|b| *b = 0);
            for (t, &i) in self.info.iter().enumerate() {
                u[i] = ((j >> t) & 1) as u8;
            }
            let mut x = u.clone();
            polar_transform(&mut x);
            out.push(x);
        }
        Ok(out)
    }

    /// Frozen positions of `x G^{⊗m}`; empty iff `x` is a codeword.
    ///
    /// `G^{⊗m}` is an involution over GF(2), so transforming a codeword
    /// recovers its message word and any non-zero frozen entry is a failed
    /// parity check.
    pub fn syndrome(&self, x: &[u8]) -> Vec<usize> {
        assert_eq!(x.len(), self.n, "word length must equal the code length");
        let mut u = x.to_vec();
        polar_transform(&mut u);
        (0..self.n)
            .filter(|&i| self.frozen[i] && u[i] != 0)
            .collect()
    }

    pub fn is_codeword(&self, x: &[u8]) -> bool {
        x.len() == self.n && self.syndrome(x).is_empty()
    }
}

/// In-place butterfly computing `x G^{⊗m}` over GF(2). Self-inverse.
pub fn polar_transform(bits: &mut [u8]) {
    let n = bits.len();
    debug_assert!(n.is_power_of_two());
    let mut half = 1;
    while half < n {
        for block in bits.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        half <<= 1;
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{i<=r} C(m, i)`.
pub fn rm_dimension(r: usize, m: usize) -> usize {
    (0..=r.min(m)).map(|i| binomial(m, i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(x: &[u8]) -> usize {
        x.iter().map(|&b| b as usize).sum()
    }

    /// `G^{⊗m}` built by explicit Kronecker products.
    fn kronecker_generator(m: usize) -> Vec<Vec<u8>> {
        let mut g = vec![vec![1u8]];
        for _ in 0..m {
            let n = g.len();
            let mut next = vec![vec![0u8; 2 * n]; 2 * n];
            for (bi, brow) in [[1u8, 0], [1, 1]].iter().enumerate() {
                for (bj, &bv) in brow.iter().enumerate() {
                    for i in 0..n {
                        for j in 0..n {
                            next[bi * n + i][bj * n + j] = bv & g[i][j];
                        }
                    }
                }
            }
            g = next;
        }
        g
    }

    #[test]
    fn rm_1_3_parameters() {
        let c = RmCode::new(1, 3).unwrap();
        assert_eq!((c.n(), c.k(), c.d()), (8, 4, 4));
        assert_eq!(c.info(), &[3, 5, 6, 7]);
    }

    #[test]
    fn larger_dimensions() {
        assert_eq!(RmCode::new(4, 8).unwrap().k(), 163);
        assert_eq!(RmCode::new(2, 9).unwrap().k(), 46);
        let rep = RmCode::new(0, 5).unwrap();
        assert_eq!((rep.k(), rep.d()), (1, 32));
        for m in 1..=10 {
            for r in 0..=m {
                assert_eq!(RmCode::new(r, m).unwrap().k(), rm_dimension(r, m));
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(RmCode::new(4, 3).is_err());
        assert!(RmCode::new(0, 0).is_err());
        assert!(RmCode::new(1, MAX_M + 1).is_err());
    }

    #[test]
    fn frozen_rule_matches_row_weight() {
        let c = RmCode::new(2, 5).unwrap();
        for i in 0..c.n() {
            let w = 1usize << i.count_ones();
            assert_eq!(c.is_frozen(i), w < c.d());
        }
    }

    #[test]
    fn unit_vector_7_encodes_to_all_ones() {
        let c = RmCode::new(1, 3).unwrap();
        let mut u = vec![0u8; 8];
        u[7] = 1;
        assert_eq!(c.encode(&u).unwrap(), vec![1u8; 8]);
        let g = kronecker_generator(3);
        assert_eq!(g[7], vec![1u8; 8]);
    }

    #[test]
    fn butterfly_matches_kronecker_product() {
        let m = 4;
        let g = kronecker_generator(m);
        let n = 1 << m;
        for seed in 0..64u32 {
            let u: Vec<u8> = (0..n)
                .map(|i| ((seed.wrapping_mul(2654435761u32) >> i) & 1) as u8)
                .collect();
            let mut x = u.clone();
            polar_transform(&mut x);
            let expect: Vec<u8> = (0..n)
                .map(|j| (0..n).fold(0u8, |acc, i| acc ^ (u[i] & g[i][j])))
                .collect();
            assert_eq!(x, expect);
        }
    }

    #[test]
    fn encode_rejects_frozen_bits() {
        let c = RmCode::new(1, 3).unwrap();
        let mut u = vec![0u8; 8];
        u[1] = 1;
        assert_eq!(c.encode(&u), Err(Error::FrozenBitSet { index: 1 }));
        assert_eq!(c.encode(&[0u8; 8]).unwrap(), vec![0u8; 8]);
    }

    #[test]
    fn rm_1_3_codeword_weights() {
        let c = RmCode::new(1, 3).unwrap();
        let set = c.codeword_set().unwrap();
        assert_eq!(set.len(), 16);
        assert!(set.iter().all(|x| matches!(weight(x), 0 | 4 | 8)));
    }

    #[test]
    fn repetition_code_set() {
        let c = RmCode::new(0, 2).unwrap();
        let set = c.codeword_set().unwrap();
        assert_eq!(set, vec![vec![0u8; 4], vec![1u8; 4]]);
    }

    #[test]
    fn min_distance_and_injectivity_small_codes() {
        for m in 1..=5 {
            for r in 0..=m {
                let c = RmCode::new(r, m).unwrap();
                if c.k() > 16 {
                    continue;
                }
                let set = c.codeword_set().unwrap();
                let min_w = set.iter().map(|x| weight(x)).filter(|&w| w > 0).min();
                if c.k() > 0 {
                    assert_eq!(min_w, Some(c.d()), "RM({r},{m})");
                }
                let mut uniq = set.clone();
                uniq.sort();
                uniq.dedup();
                assert_eq!(uniq.len(), 1 << c.k());
                assert!(set.iter().all(|x| c.is_codeword(x)));
            }
        }
    }

    #[test]
    fn frozen_mask_monotone_under_domination() {
        for m in 1..=7 {
            for r in 0..=m {
                let c = RmCode::new(r, m).unwrap();
                for i in 0..c.n() {
                    for &j in c.info() {
                        if i & j == j {
                            assert!(!c.is_frozen(i));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn refuses_large_enumeration() {
        let c = RmCode::new(4, 8).unwrap();
        assert!(matches!(
            c.codeword_set(),
            Err(Error::TooManyCodewords { .. })
        ));
    }

    #[test]
    fn syndrome_detects_single_flip() {
        let c = RmCode::new(2, 6).unwrap();
        let mut x = vec![0u8; c.n()];
        assert!(c.is_codeword(&x));
        x[17] = 1;
        assert!(!c.is_codeword(&x));
    }
}
