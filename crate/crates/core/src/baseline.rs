//! Single-path SSC-FHT and its automorphism ensemble.

use rand::Rng;

use crate::code::RmCode;
use crate::cost::CostLedger;
use crate::error::{Error, Result};
use crate::kernels::{combine, f_stage, g_stage, hard};
use crate::leaf::{argmin_metric, fht, first_order_codeword, metrics_tied};
use crate::perm::AffinePerm;
use crate::sprld::{DecodeOutput, PermSampler};

/// Simplified SC decoding: first-order nodes by their largest Hadamard
/// coefficient, single-parity-check nodes by hard decision with the least
/// reliable bit flipped on a parity failure. Returns the codeword and its
/// path metric.
pub fn ssc_fht_decode(
    alpha: &[f64],
    code: &RmCode,
    ledger: &mut CostLedger,
) -> Result<(Vec<u8>, f64)> {
    if alpha.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: alpha.len(),
        });
    }
    if code.r() == 0 || code.r() >= code.m() {
        return Err(Error::UnsupportedNode {
            r: code.r(),
            s: code.m(),
        });
    }
    Ok(ssc(alpha, 0.0, code.r(), code.m(), ledger))
}

fn ssc(alpha: &[f64], pm: f64, r: usize, s: usize, ledger: &mut CostLedger) -> (Vec<u8>, f64) {
    let n = alpha.len();
    if r == 1 {
        ledger.charge_fht(1, n);
        ledger.charge_prune(n, 1);
        ledger.charge_pm(n);
        let spec = fht(alpha);
        let mut k_best = 0;
        for k in 1..n {
            let (a, b) = (spec[k].abs(), spec[k_best].abs());
            if a > b && !metrics_tied(a, b) {
                k_best = k;
            }
        }
        let total: f64 = alpha.iter().map(|a| a.abs()).sum();
        let choice = 2 * k_best + (spec[k_best] < 0.0) as usize;
        return (
            first_order_codeword(n, choice),
            pm + 0.5 * (total - spec[k_best].abs()),
        );
    }
    if r == s - 1 {
        ledger.charge_prune(n, 1);
        ledger.charge_pm(1);
        let mut bits: Vec<u8> = alpha.iter().map(|&a| hard(a)).collect();
        if bits.iter().fold(0, |p, &b| p ^ b) == 1 {
            let weakest = (0..n)
                .min_by(|&a, &b| alpha[a].abs().total_cmp(&alpha[b].abs()).then(a.cmp(&b)))
                .expect("non-empty node");
            bits[weakest] ^= 1;
            return (bits, pm + alpha[weakest].abs());
        }
        return (bits, pm);
    }
    let half = n / 2;
    ledger.charge_f(1, half);
    let (left, pm) = ssc(&f_stage(alpha), pm, r - 1, s - 1, ledger);
    ledger.charge_g(1, half);
    let (right, pm) = ssc(&g_stage(alpha, &left), pm, r, s - 1, ledger);
    (combine(&left, &right), pm)
}

/// Aut-SSC-FHT-P over automorphisms from GA(m, 2).
pub fn aut_ssc_fht_decode<R: Rng + ?Sized>(
    llr: &[f64],
    code: &RmCode,
    decoders: usize,
    rng: &mut R,
    ledger: &mut CostLedger,
) -> Result<DecodeOutput> {
    aut_ssc_fht_decode_with(llr, code, decoders, PermSampler::FullAffine, rng, ledger)
}

/// Runs `decoders` SSC-FHT instances on permuted copies of `llr` (the first
/// unpermuted) and keeps the candidate with the smallest path metric.
///
/// In the cost model the instances share one decoder sequentially or run
/// side by side in parallel.
pub fn aut_ssc_fht_decode_with<R: Rng + ?Sized>(
    llr: &[f64],
    code: &RmCode,
    decoders: usize,
    sampler: PermSampler,
    rng: &mut R,
    ledger: &mut CostLedger,
) -> Result<DecodeOutput> {
    if decoders == 0 {
        return Err(Error::Config("need at least one SSC-FHT decoder".into()));
    }
    let m = code.m();
    let mut costs = vec![CostLedger::new(); decoders];
    let mut outs = Vec::with_capacity(decoders);
    for (p, cost) in costs.iter_mut().enumerate() {
        let perm = if p == 0 {
            AffinePerm::identity(m)
        } else {
            sampler.sample(m, rng)
        };
        let (x, pm) = ssc_fht_decode(&perm.permute(llr), code, cost)?;
        outs.push(DecodeOutput {
            codeword: perm.inverse().permute(&x),
            pm,
        });
    }
    ledger.join_time_shared(&costs);
    ledger.charge_prune(decoders, 1);
    let best = argmin_metric(outs.iter().map(|o| o.pm)).expect("at least one decoder");
    Ok(outs.swap_remove(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelConfig;
    use crate::cost::SpMode;
    use crate::rng::stream;

    fn random_word(code: &RmCode, rng: &mut impl Rng) -> Vec<u8> {
        let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
        code.encode_message(&msg).unwrap()
    }

    #[test]
    fn noiseless_round_trip() {
        for (r, m) in [(1, 3), (2, 4), (2, 6), (3, 7), (2, 8)] {
            let code = RmCode::new(r, m).unwrap();
            let mut rng = stream(1, &[r as u64, m as u64]);
            for _ in 0..20 {
                let x = random_word(&code, &mut rng);
                let llr: Vec<f64> = x
                    .iter()
                    .map(|&b| if b == 0 { 20.0 } else { -20.0 })
                    .collect();
                let (y, pm) = ssc_fht_decode(&llr, &code, &mut CostLedger::new()).unwrap();
                assert_eq!(y, x);
                assert_eq!(pm, 0.0);
            }
        }
    }

    #[test]
    fn outputs_are_codewords_and_best_of_p() {
        let code = RmCode::new(2, 6).unwrap();
        let ch = ChannelConfig::new(1.0, code.rate()).unwrap();
        let mut rng = stream(2, &[]);
        for _ in 0..100 {
            let x = random_word(&code, &mut rng);
            let llr = ch.observe(&x, &mut rng);
            let (y, pm1) = ssc_fht_decode(&llr, &code, &mut CostLedger::new()).unwrap();
            assert!(code.is_codeword(&y));
            let out = aut_ssc_fht_decode(&llr, &code, 8, &mut rng, &mut CostLedger::new()).unwrap();
            assert!(code.is_codeword(&out.codeword));
            assert!(out.pm <= pm1 || metrics_tied(out.pm, pm1));
        }
    }

    #[test]
    fn single_decoder_is_plain_ssc() {
        let code = RmCode::new(2, 5).unwrap();
        let ch = ChannelConfig::new(0.5, code.rate()).unwrap();
        let mut rng = stream(3, &[]);
        for _ in 0..100 {
            let x = random_word(&code, &mut rng);
            let llr = ch.observe(&x, &mut rng);
            let (y, pm) = ssc_fht_decode(&llr, &code, &mut CostLedger::new()).unwrap();
            let out = aut_ssc_fht_decode(&llr, &code, 1, &mut rng, &mut CostLedger::new()).unwrap();
            assert_eq!(out.codeword, y);
            assert_eq!(out.pm, pm);
        }
    }

    #[test]
    fn latency_accounting() {
        let code = RmCode::new(2, 8).unwrap();
        let llr = vec![1.0; code.n()];
        let mut one = CostLedger::new();
        ssc_fht_decode(&llr, &code, &mut one).unwrap();
        let mut many = CostLedger::new();
        aut_ssc_fht_decode(&llr, &code, 4, &mut stream(0, &[]), &mut many).unwrap();
        assert_eq!(
            many.steps(SpMode::Sequential),
            4 * one.steps(SpMode::Sequential) + 2
        );
        assert_eq!(
            many.steps(SpMode::Parallel),
            one.steps(SpMode::Parallel) + 2
        );
        assert_eq!(many.ops(), 4 * one.ops() + 3);
    }

    #[test]
    fn rejects_bad_input() {
        let code = RmCode::new(2, 4).unwrap();
        assert!(ssc_fht_decode(&[0.0; 8], &code, &mut CostLedger::new()).is_err());
        assert!(aut_ssc_fht_decode(
            &[0.0; 16],
            &code,
            0,
            &mut stream(0, &[]),
            &mut CostLedger::new()
        )
        .is_err());
        let rep = RmCode::new(0, 4).unwrap();
        assert!(ssc_fht_decode(&[0.0; 16], &rep, &mut CostLedger::new()).is_err());
    }
}
