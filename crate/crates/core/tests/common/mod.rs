#![allow(dead_code)]

use rand::Rng;
use rmsp::code::RmCode;
use rmsp::kernels::{combine, f_stage, g_stage, hard};

pub fn random_word(code: &RmCode, rng: &mut impl Rng) -> Vec<u8> {
    let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
    code.encode_message(&msg).unwrap()
}

pub fn gaussian_llr(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n)
        .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal) * 2.0)
        .collect()
}

/// Codeword of message-domain bits `u` (length a power of two).
fn reencode(u: &[u8]) -> Vec<u8> {
    if u.len() == 1 {
        return u.to_vec();
    }
    let h = u.len() / 2;
    combine(&reencode(&u[..h]), &reencode(&u[h..]))
}

/// Decision LLR of bit `i` given the earlier decisions `u[..i]`.
fn bit_llr(alpha: &[f64], u: &[u8], i: usize) -> f64 {
    if alpha.len() == 1 {
        return alpha[0];
    }
    let h = alpha.len() / 2;
    if i < h {
        bit_llr(&f_stage(alpha), &u[..i.min(h)], i)
    } else {
        let left = reencode(&u[..h]);
        bit_llr(&g_stage(alpha, &left), &u[h..], i - h)
    }
}

/// Plain bit-by-bit successive-cancellation list decoding with the metric
/// `pm += |α|` on every decision against the LLR sign. Returns the
/// surviving metrics in ascending order.
pub fn scl_metrics(alpha: &[f64], frozen: &[bool], list: usize) -> Vec<f64> {
    let n = alpha.len();
    let mut paths: Vec<(Vec<u8>, f64)> = vec![(Vec::new(), 0.0)];
    for (i, &is_frozen) in frozen.iter().enumerate().take(n) {
        let mut next = Vec::new();
        for (u, pm) in &paths {
            let a = bit_llr(alpha, u, i);
            let choices: &[u8] = if is_frozen { &[0] } else { &[0, 1] };
            for &b in choices {
                let mut v = u.clone();
                v.push(b);
                let cost = if hard(a) != b { a.abs() } else { 0.0 };
                next.push((v, pm + cost));
            }
        }
        next.sort_by(|a, b| a.1.total_cmp(&b.1));
        next.truncate(list);
        paths = next;
    }
    paths.into_iter().map(|(_, pm)| pm).collect()
}

pub fn correlation(x: &[u8], alpha: &[f64]) -> f64 {
    rmsp::sim::correlation(x, alpha)
}
