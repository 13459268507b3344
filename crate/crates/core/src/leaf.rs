//! List decoders for the special constituent codes: first-order RM nodes
//! (via the fast Hadamard transform) and single-parity-check nodes.
//!
//! Both decoders take every incoming path, generate candidate codewords with
//! their updated path metrics, and keep the `L` best across all paths.

use std::cmp::Ordering;

use crate::cost::CostLedger;
use crate::error::{Error, Result};
use crate::kernels::hard;
use crate::perm::AffinePerm;

/// One decoding path at a node of the decoding tree.
#[derive(Debug, Clone)]
pub struct DecodePath {
    /// Node LLRs. Consumed by the decoders; empty on their outputs.
    pub alpha: Vec<f64>,
    pub pm: f64,
    /// Estimated node codeword, filled once the node is decoded.
    pub x_hat: Vec<u8>,
    /// Code-level permutation the path was started with.
    pub pi_init: AffinePerm,
    /// Node-level permutation chosen by successive permutation.
    pub pi_sp: AffinePerm,
    /// Index of the input path this path derives from.
    pub l_org: usize,
    /// Walsh-Hadamard spectrum of `alpha`, when already computed.
    pub spectrum: Option<Vec<f64>>,
}

impl DecodePath {
    /// Fresh path with zero metric at the code level.
    pub fn root(alpha: Vec<f64>, pi_init: AffinePerm) -> Self {
        let dim = pi_init.dim();
        DecodePath {
            alpha,
            pm: 0.0,
            x_hat: Vec::new(),
            pi_init,
            pi_sp: AffinePerm::identity(dim),
            l_org: 0,
            spectrum: None,
        }
    }

    /// Input for a child node derived from path `l_org`.
    pub fn child(alpha: Vec<f64>, pm: f64, pi_init: AffinePerm, l_org: usize) -> Self {
        let dim = (alpha.len().trailing_zeros() as usize).max(1);
        DecodePath {
            alpha,
            pm,
            x_hat: Vec::new(),
            pi_init,
            pi_sp: AffinePerm::identity(dim),
            l_org,
            spectrum: None,
        }
    }

    fn decoded(parent: &DecodePath, parent_index: usize, x_hat: Vec<u8>, pm: f64) -> Self {
        DecodePath {
            alpha: Vec::new(),
            pm,
            x_hat,
            pi_init: parent.pi_init,
            pi_sp: parent.pi_sp,
            l_org: parent_index,
            spectrum: None,
        }
    }
}

/// A candidate extension of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub parent: usize,
    pub choice: usize,
    pub pm: f64,
}

/// Candidates awaiting pruning to the list size.
#[derive(Debug, Clone, Default)]
pub struct CandidateList {
    pub entries: Vec<Candidate>,
}

impl CandidateList {
    pub fn with_capacity(n: usize) -> Self {
        CandidateList {
            entries: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, parent: usize, choice: usize, pm: f64) {
        self.entries.push(Candidate { parent, choice, pm });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn candidate_order(a: &Candidate, b: &Candidate) -> Ordering {
    a.pm.total_cmp(&b.pm)
        .then(a.parent.cmp(&b.parent))
        .then(a.choice.cmp(&b.choice))
}

/// Relative difference below which two metrics count as equal.
///
/// Min-sum metrics are sums of repeated channel magnitudes, so exact ties
/// are common; summed in different orders they differ in the last bits.
/// Treating them as ties keeps decisions independent of rounding and of
/// the LLR scale.
pub const TIE_TOLERANCE: f64 = 1e-12;

pub fn metrics_tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs())
}

/// Index of the smallest metric; the first one wins ties.
pub fn argmin_metric<I: IntoIterator<Item = f64>>(pms: I) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, pm) in pms.into_iter().enumerate() {
        if best.is_none_or(|(_, b)| pm < b && !metrics_tied(pm, b)) {
            best = Some((i, pm));
        }
    }
    best.map(|(i, _)| i)
}

/// Keeps the `list_size` smallest metrics, sorted; ties go to the smaller
/// `(parent, choice)`.
pub fn prune(
    mut candidates: CandidateList,
    list_size: usize,
    ledger: &mut CostLedger,
) -> CandidateList {
    ledger.charge_prune(candidates.len(), list_size);
    let e = &mut candidates.entries;
    e.sort_by(candidate_order);
    let mut i = 0;
    while i < e.len().min(list_size) {
        let mut j = i + 1;
        while j < e.len() && metrics_tied(e[j - 1].pm, e[j].pm) {
            j += 1;
        }
        if j > i + 1 {
            e[i..j].sort_by(|a, b| a.parent.cmp(&b.parent).then(a.choice.cmp(&b.choice)));
        }
        i = j;
    }
    e.truncate(list_size);
    candidates
}

/// In-place Walsh-Hadamard transform: entry `k` becomes
/// `Σ_i α_i (-1)^{popcount(k & i)}`.
pub fn fht_in_place(v: &mut [f64]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

pub fn fht(alpha: &[f64]) -> Vec<f64> {
    let mut v = alpha.to_vec();
    fht_in_place(&mut v);
    v
}

/// Bits of first-order codeword `choice = 2k + c`: `x_i = <k, i> ⊕ c`.
pub fn first_order_codeword(len: usize, choice: usize) -> Vec<u8> {
    let k = choice >> 1;
    let c = (choice & 1) as u8;
    (0..len)
        .map(|i| ((k & i).count_ones() & 1) as u8 ^ c)
        .collect()
}

fn check_node(paths: &[DecodePath]) -> Result<usize> {
    let n = paths.first().map(|p| p.alpha.len()).unwrap_or(0);
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::LengthMismatch {
            expected: n.next_power_of_two().max(2),
            got: n,
        });
    }
    if let Some(p) = paths.iter().find(|p| p.alpha.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            got: p.alpha.len(),
        });
    }
    Ok(n)
}

/// ML list decoding of a first-order RM node of length `2^s`.
///
/// Codeword `2k + c` has correlation `±F[k]` with the node LLRs, and its
/// metric increment is `(Σ|α| - correlation) / 2`. Per path only the `2^s`
/// sign-matched codewords are generated unless `L > 2^s`: a complemented
/// word never beats the `2^s` sign-matched words of its own path.
pub fn fht_list(
    paths: &[DecodePath],
    list_size: usize,
    ledger: &mut CostLedger,
) -> Result<Vec<DecodePath>> {
    if paths.is_empty() {
        return Ok(Vec::new());
    }
    let n = check_node(paths)?;
    let both_signs = list_size > n;

    let missing = paths.iter().filter(|p| p.spectrum.is_none()).count();
    if missing > 0 {
        ledger.charge_fht(missing, n);
    }

    let per_path = if both_signs { 2 * n } else { n };
    let mut cands = CandidateList::with_capacity(paths.len() * per_path);
    for (pi, path) in paths.iter().enumerate() {
        let computed;
        let spec: &[f64] = match &path.spectrum {
            Some(s) => s,
            None => {
                computed = fht(&path.alpha);
                &computed
            }
        };
        let total: f64 = path.alpha.iter().map(|a| a.abs()).sum();
        for (k, &fk) in spec.iter().enumerate() {
            let matched = 2 * k + (fk < 0.0) as usize;
            cands.push(pi, matched, path.pm + 0.5 * (total - fk.abs()));
            if both_signs {
                cands.push(pi, matched ^ 1, path.pm + 0.5 * (total + fk.abs()));
            }
        }
    }
    ledger.charge_pm(paths.len() * (n - 1) + 2 * cands.len());

    let kept = prune(cands, list_size, ledger);
    Ok(kept
        .entries
        .iter()
        .map(|c| {
            let parent = &paths[c.parent];
            DecodePath::decoded(parent, c.parent, first_order_codeword(n, c.choice), c.pm)
        })
        .collect())
}

struct SpcState {
    parent: usize,
    bits: Vec<u8>,
    pm: f64,
    /// Parity still owed by the least reliable bit.
    owed: bool,
}

/// List decoding of a single-parity-check node of length `2^s`.
///
/// Each path starts from its hard decisions, charging the least reliable
/// magnitude when the parity fails. It is then split `min(L-1, 2^s-1)`
/// times over the next least reliable bits; a flip costs `|α_i|` and moves
/// the parity correction on or off the least reliable bit. The list is
/// pruned to `L` after every split.
pub fn spc_list(
    paths: &[DecodePath],
    list_size: usize,
    ledger: &mut CostLedger,
) -> Result<Vec<DecodePath>> {
    if paths.is_empty() {
        return Ok(Vec::new());
    }
    let n = check_node(paths)?;

    let orders: Vec<Vec<usize>> = paths
        .iter()
        .map(|p| {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| {
                p.alpha[a]
                    .abs()
                    .total_cmp(&p.alpha[b].abs())
                    .then(a.cmp(&b))
            });
            idx
        })
        .collect();
    ledger.charge_sort(paths.len(), n);

    let mut states: Vec<SpcState> = paths
        .iter()
        .enumerate()
        .map(|(pi, p)| {
            let bits: Vec<u8> = p.alpha.iter().map(|&a| hard(a)).collect();
            let owed = bits.iter().fold(0u8, |acc, &b| acc ^ b) == 1;
            let weakest = p.alpha[orders[pi][0]].abs();
            SpcState {
                parent: pi,
                bits,
                pm: p.pm + if owed { weakest } else { 0.0 },
                owed,
            }
        })
        .collect();
    ledger.charge_pm(paths.len());
    if states.len() > list_size {
        let mut c = CandidateList::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            c.push(i, 0, s.pm);
        }
        states = take_states(states, prune(c, list_size, ledger), |s, _| s);
    }

    let splits = (list_size - 1).min(n - 1);
    for j in 1..=splits {
        let mut cands = CandidateList::with_capacity(2 * states.len());
        for (si, st) in states.iter().enumerate() {
            let alpha = &paths[st.parent].alpha;
            let order = &orders[st.parent];
            let (pos, weakest) = (order[j], order[0]);
            let correction = if st.owed {
                -alpha[weakest].abs()
            } else {
                alpha[weakest].abs()
            };
            cands.push(si, 0, st.pm);
            cands.push(si, 1, st.pm + alpha[pos].abs() + correction);
        }
        ledger.charge_pm(2 * states.len());
        let kept = prune(cands, list_size, ledger);
        states = take_states(states, kept, |mut st, flip| {
            if flip {
                let pos = orders[st.parent][j];
                st.bits[pos] ^= 1;
                st.owed = !st.owed;
            }
            st
        });
    }

    Ok(states
        .into_iter()
        .map(|mut st| {
            if st.owed {
                st.bits[orders[st.parent][0]] ^= 1;
            }
            DecodePath::decoded(&paths[st.parent], st.parent, st.bits, st.pm)
        })
        .collect())
}

/// Materializes the surviving candidates; `apply` receives each state and
/// whether the candidate is its flip branch.
fn take_states<F>(states: Vec<SpcState>, kept: CandidateList, mut apply: F) -> Vec<SpcState>
where
    F: FnMut(SpcState, bool) -> SpcState,
{
    let mut uses = vec![0usize; states.len()];
    for c in &kept.entries {
        uses[c.parent] += 1;
    }
    let mut slots: Vec<Option<SpcState>> = states.into_iter().map(Some).collect();
    kept.entries
        .iter()
        .map(|c| {
            uses[c.parent] -= 1;
            let st = if uses[c.parent] == 0 {
                slots[c.parent].take().expect("state used once")
            } else {
                let s = slots[c.parent].as_ref().expect("state present");
                SpcState {
                    parent: s.parent,
                    bits: s.bits.clone(),
                    pm: s.pm,
                    owed: s.owed,
                }
            };
            let mut st = apply(st, c.choice == 1);
            st.pm = c.pm;
            st
        })
        .collect()
}
