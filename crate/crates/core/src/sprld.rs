//! Recursive list decoding with successive codeword permutations.
//!
//! Each of the `L` paths starts on its own random automorphism of the code.
//! At every internal node RM(r, s) with `1 < r < s - 1`, each path may pick
//! the node permutation whose left child looks most reliable: candidate `π`
//! is scored by the ML correlation of the best first-order codeword for
//! `f(π(α))` when the left child is first order, and by `Σ|f(π(α))|`
//! otherwise. First-order and single-parity-check nodes are leaves decoded
//! by [`fht_list`] and [`spc_list`].
//!
//! The right child is fed from the permuted parent LLRs of the path its
//! left estimate came from, and the rebuilt node codeword is mapped back
//! through the inverse of that permutation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::RmCode;
use crate::cost::CostLedger;
use crate::error::{Error, Result};
use crate::kernels::{combine, f_stage, g_stage};
use crate::leaf::{argmin_metric, fht, fht_list, metrics_tied, spc_list, DecodePath};
use crate::perm::AffinePerm;

/// Source of random codeword permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PermSampler {
    /// Uniform over the general affine group GA(s, 2).
    #[default]
    FullAffine,
    /// Uniform over factor-graph (stage) permutations.
    Stage,
    /// Always the identity; disables every permutation.
    Identity,
}

impl PermSampler {
    pub fn sample<R: Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> AffinePerm {
        match self {
            PermSampler::FullAffine => AffinePerm::sample_affine(dim, rng),
            PermSampler::Stage => AffinePerm::sample_stage(dim, rng),
            PermSampler::Identity => AffinePerm::identity(dim),
        }
    }
}

/// Parameters of SP-RLD and SSP-RLD.
#[derive(Debug, Clone, PartialEq)]
pub struct SpConfig {
    pub list_size: usize,
    /// Number of left-child visits that use permutation selection, counted
    /// in recursion order over the whole tree. `None` applies it everywhere.
    pub sp_budget: Option<usize>,
    /// Candidate permutations per node; defaults to the node stage `s`.
    pub candidates_per_node: Option<usize>,
    pub sampler: PermSampler,
    /// Keep path 0 on the unpermuted code; otherwise every initial
    /// permutation is sampled.
    pub identity_start: bool,
}

impl SpConfig {
    /// SP-RLD with list size `L`.
    pub fn sp_rld(list_size: usize) -> Self {
        SpConfig {
            list_size,
            sp_budget: None,
            candidates_per_node: None,
            sampler: PermSampler::FullAffine,
            identity_start: true,
        }
    }

    /// SSP-RLD-`S`-`L`.
    pub fn ssp_rld(budget: usize, list_size: usize) -> Self {
        SpConfig {
            sp_budget: Some(budget),
            ..Self::sp_rld(list_size)
        }
    }

    pub fn with_sampler(mut self, sampler: PermSampler) -> Self {
        self.sampler = sampler;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.list_size == 0 {
            return Err(Error::Config("list size must be at least 1".into()));
        }
        if self.candidates_per_node == Some(0) {
            return Err(Error::Config(
                "need at least one candidate permutation".into(),
            ));
        }
        Ok(())
    }
}

/// Order and stage of a constituent code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeRef {
    pub r: usize,
    pub s: usize,
}

impl NodeRef {
    pub fn new(r: usize, s: usize) -> Self {
        NodeRef { r, s }
    }
}

/// An internal node visited during decoding and whether it used selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeVisit {
    pub node: NodeRef,
    pub permuted: bool,
}

/// Decoder output in the channel index domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutput {
    pub codeword: Vec<u8>,
    pub pm: f64,
}

/// Reliability of a left-child LLR vector: the best first-order correlation
/// `max_k |FHT(α)[k]|` when `child_order == 1`, else `Σ|α|`.
pub fn perm_metric(alpha_lambda: &[f64], child_order: usize) -> f64 {
    assert!(child_order >= 1, "a left child of order 0 is never scored");
    if child_order == 1 {
        fht(alpha_lambda).iter().fold(0.0, |m, x| m.max(x.abs()))
    } else {
        alpha_lambda.iter().map(|a| a.abs()).sum()
    }
}

/// Winner of a permutation selection at one node.
#[derive(Debug, Clone)]
pub struct Selection {
    pub perm: AffinePerm,
    /// Parent LLRs after the permutation.
    pub permuted: Vec<f64>,
    /// Left-child LLRs `f(permuted)`.
    pub left: Vec<f64>,
    /// Spectrum of `left`, for first-order children.
    pub spectrum: Option<Vec<f64>>,
    pub metric: f64,
}

/// Scores `candidates` permutations (the identity first, the rest from
/// `sampler`) and keeps the first maximum. Stores the winner in
/// `path.pi_sp`.
pub fn select_permutation<R: Rng + ?Sized>(
    path: &mut DecodePath,
    node: NodeRef,
    candidates: usize,
    sampler: PermSampler,
    rng: &mut R,
) -> Selection {
    let perms: Vec<AffinePerm> = (0..candidates.max(1))
        .map(|c| {
            if c == 0 {
                AffinePerm::identity(node.s)
            } else {
                sampler.sample(node.s, rng)
            }
        })
        .collect();
    let best = score_candidates(&path.alpha, node, &perms);
    path.pi_sp = best.perm;
    best
}

/// Evaluates every permutation in `perms` on the node LLRs `alpha` and
/// returns the first one with the largest metric, treating values equal up
/// to rounding as ties.
pub fn score_candidates(alpha: &[f64], node: NodeRef, perms: &[AffinePerm]) -> Selection {
    assert!(
        node.r >= 2,
        "selection needs a left child of order at least 1"
    );
    let child_order = node.r - 1;
    let mut best: Option<Selection> = None;
    for &perm in perms {
        let permuted = perm.permute(alpha);
        let left = f_stage(&permuted);
        let (metric, spectrum) = if child_order == 1 {
            let spec = fht(&left);
            (
                spec.iter().fold(0.0, |m: f64, x| m.max(x.abs())),
                Some(spec),
            )
        } else {
            (left.iter().map(|a| a.abs()).sum(), None)
        };
        if best.as_ref().is_none_or(|b| beats(metric, b.metric)) {
            best = Some(Selection {
                perm,
                permuted,
                left,
                spectrum,
                metric,
            });
        }
    }
    best.expect("at least one candidate")
}

fn beats(metric: f64, best: f64) -> bool {
    metric > best && !metrics_tied(metric, best)
}

struct Walk<'a, R: ?Sized> {
    cfg: &'a SpConfig,
    budget: Option<usize>,
    rng: &'a mut R,
    ledger: &'a mut CostLedger,
    trace: Vec<NodeVisit>,
}

impl<R: Rng + ?Sized> Walk<'_, R> {
    fn take_budget(&mut self) -> bool {
        match self.budget.as_mut() {
            None => true,
            Some(0) => false,
            Some(b) => {
                *b -= 1;
                true
            }
        }
    }

    fn recurse(&mut self, mut paths: Vec<DecodePath>, node: NodeRef) -> Result<Vec<DecodePath>> {
        let NodeRef { r, s } = node;
        if r == 0 || r >= s {
            return Err(Error::UnsupportedNode { r, s });
        }
        let list = self.cfg.list_size;
        if r == 1 {
            return fht_list(&paths, list, self.ledger);
        }
        if r == s - 1 {
            return spc_list(&paths, list, self.ledger);
        }

        let half = 1usize << (s - 1);
        let permuted = self.take_budget();
        self.trace.push(NodeVisit { node, permuted });

        let mut parent_alpha = Vec::with_capacity(paths.len());
        let mut parent_perm = Vec::with_capacity(paths.len());
        let mut left_in = Vec::with_capacity(paths.len());
        if permuted {
            let candidates = self.cfg.candidates_per_node.unwrap_or(s);
            self.ledger
                .charge_selection(paths.len(), candidates, s, r - 1);
            for (l, path) in paths.iter_mut().enumerate() {
                let sel = select_permutation(path, node, candidates, self.cfg.sampler, self.rng);
                let mut child = DecodePath::child(sel.left, path.pm, path.pi_init, l);
                child.spectrum = sel.spectrum;
                left_in.push(child);
                parent_alpha.push(sel.permuted);
                parent_perm.push(sel.perm);
            }
        } else {
            self.ledger.charge_f(paths.len(), half);
            for (l, path) in paths.into_iter().enumerate() {
                left_in.push(DecodePath::child(
                    f_stage(&path.alpha),
                    path.pm,
                    path.pi_init,
                    l,
                ));
                parent_alpha.push(path.alpha);
                parent_perm.push(AffinePerm::identity(s));
            }
        }

        let left_out = self.recurse(left_in, NodeRef::new(r - 1, s - 1))?;

        self.ledger.charge_g(left_out.len(), half);
        let right_in: Vec<DecodePath> = left_out
            .iter()
            .enumerate()
            .map(|(j, lp)| {
                let alpha = g_stage(&parent_alpha[lp.l_org], &lp.x_hat);
                DecodePath::child(alpha, lp.pm, lp.pi_init, j)
            })
            .collect();

        let right_out = self.recurse(right_in, NodeRef::new(r, s - 1))?;

        let inverses: Vec<Option<AffinePerm>> = parent_perm
            .iter()
            .map(|p| (!p.is_identity()).then(|| p.inverse()))
            .collect();
        Ok(right_out
            .into_iter()
            .map(|rp| {
                let lp = &left_out[rp.l_org];
                let origin = lp.l_org;
                let joined = combine(&lp.x_hat, &rp.x_hat);
                let x_hat = match &inverses[origin] {
                    Some(inv) => inv.permute(&joined),
                    None => joined,
                };
                DecodePath {
                    alpha: Vec::new(),
                    pm: rp.pm,
                    x_hat,
                    pi_init: rp.pi_init,
                    pi_sp: parent_perm[origin],
                    l_org: origin,
                    spectrum: None,
                }
            })
            .collect())
    }
}

/// SP-RLD / SSP-RLD decoder for one code.
#[derive(Debug, Clone)]
pub struct SpRldDecoder {
    code: RmCode,
    cfg: SpConfig,
}

impl SpRldDecoder {
    pub fn new(code: RmCode, cfg: SpConfig) -> Result<Self> {
        cfg.validate()?;
        if code.r() == 0 || code.r() >= code.m() {
            return Err(Error::UnsupportedNode {
                r: code.r(),
                s: code.m(),
            });
        }
        Ok(SpRldDecoder { code, cfg })
    }

    pub fn code(&self) -> &RmCode {
        &self.code
    }

    pub fn config(&self) -> &SpConfig {
        &self.cfg
    }

    pub fn decode<R: Rng + ?Sized>(
        &self,
        llr: &[f64],
        rng: &mut R,
        ledger: &mut CostLedger,
    ) -> Result<DecodeOutput> {
        self.decode_traced(llr, rng, ledger).map(|(out, _)| out)
    }

    /// Like [`decode`](Self::decode), also returning the internal nodes in
    /// visiting order.
    pub fn decode_traced<R: Rng + ?Sized>(
        &self,
        llr: &[f64],
        rng: &mut R,
        ledger: &mut CostLedger,
    ) -> Result<(DecodeOutput, Vec<NodeVisit>)> {
        let n = self.code.n();
        if llr.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: llr.len(),
            });
        }
        let m = self.code.m();
        let paths: Vec<DecodePath> = (0..self.cfg.list_size)
            .map(|l| {
                let pi = if l == 0 && self.cfg.identity_start {
                    AffinePerm::identity(m)
                } else {
                    self.cfg.sampler.sample(m, rng)
                };
                DecodePath::root(pi.permute(llr), pi)
            })
            .collect();

        let mut walk = Walk {
            cfg: &self.cfg,
            budget: self.cfg.sp_budget,
            rng,
            ledger,
            trace: Vec::new(),
        };
        let out = walk.recurse(paths, NodeRef::new(self.code.r(), m))?;
        let trace = walk.trace;

        ledger.charge_prune(out.len(), 1);
        let best =
            &out[argmin_metric(out.iter().map(|p| p.pm)).expect("decoder keeps at least one path")];
        let codeword = best.pi_init.inverse().permute(&best.x_hat);
        Ok((
            DecodeOutput {
                codeword,
                pm: best.pm,
            },
            trace,
        ))
    }
}

/// SP-RLD: selection at every internal node.
pub fn sp_rld_decode<R: Rng + ?Sized>(
    llr: &[f64],
    code: &RmCode,
    list_size: usize,
    rng: &mut R,
    ledger: &mut CostLedger,
) -> Result<Vec<u8>> {
    let dec = SpRldDecoder::new(code.clone(), SpConfig::sp_rld(list_size))?;
    Ok(dec.decode(llr, rng, ledger)?.codeword)
}

/// SSP-RLD: selection at the first `budget` left-child visits only.
pub fn ssp_rld_decode<R: Rng + ?Sized>(
    llr: &[f64],
    code: &RmCode,
    budget: usize,
    list_size: usize,
    rng: &mut R,
    ledger: &mut CostLedger,
) -> Result<Vec<u8>> {
    let dec = SpRldDecoder::new(code.clone(), SpConfig::ssp_rld(budget, list_size))?;
    Ok(dec.decode(llr, rng, ledger)?.codeword)
}

/// Ens-SSP-RLD: `branches` independent decoders configured by `cfg`, each
/// on its own random stream; returns the output with the smallest metric.
///
/// Branch seeds are drawn from `rng` before any branch runs and branch 0
/// continues on `rng` itself, so a single branch is exactly the plain
/// decoder. Only branch 0 may start from the unpermuted code.
pub fn ens_ssp_rld_decode<R: Rng + ?Sized>(
    llr: &[f64],
    code: &RmCode,
    cfg: &SpConfig,
    branches: usize,
    rng: &mut R,
    ledger: &mut CostLedger,
) -> Result<DecodeOutput> {
    if branches == 0 {
        return Err(Error::Config("ensemble needs at least one branch".into()));
    }
    let dec = SpRldDecoder::new(code.clone(), cfg.clone())?;
    let others = SpRldDecoder::new(
        code.clone(),
        SpConfig {
            identity_start: false,
            ..cfg.clone()
        },
    )?;
    let seeds: Vec<u64> = (1..branches).map(|_| rng.random()).collect();

    let mut costs = vec![CostLedger::new(); branches];
    let mut outs = Vec::with_capacity(branches);
    outs.push(dec.decode(llr, rng, &mut costs[0])?);
    for (t, &seed) in seeds.iter().enumerate() {
        let mut branch_rng = ChaCha8Rng::seed_from_u64(seed);
        outs.push(others.decode(llr, &mut branch_rng, &mut costs[t + 1])?);
    }
    ledger.join_parallel(&costs);
    ledger.charge_prune(branches, 1);

    let best = argmin_metric(outs.iter().map(|o| o.pm)).expect("at least one branch");
    Ok(outs.swap_remove(best))
}
