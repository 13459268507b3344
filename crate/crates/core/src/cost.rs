//! Operation, latency and memory accounting.
//!
//! Every floating-point addition, subtraction or comparison counts as one
//! operation. Operations that run concurrently across a node (an `f` or `g`
//! stage, a batch of path-metric updates) take one time step; hard decisions,
//! permutations and binary operations are free. An FHT over `2^t` values
//! takes `t` steps, and sorting `n` values takes `log2 n` steps and
//! `n log2 n` comparisons.
//!
//! Permutation selection is tracked twice: `steps_seq` evaluates the
//! candidate permutations one after another, `steps_par` evaluates them
//! all at once.

use std::ops::AddAssign;

/// How candidate permutations are evaluated in hardware.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpMode {
    #[default]
    Sequential,
    Parallel,
}

/// Floating-point operation and time-step counters for one or more decodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CostLedger {
    pub adds: u64,
    pub compares: u64,
    pub steps_seq: u64,
    pub steps_par: u64,
}

pub(crate) fn log2_ceil(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as u64
    }
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total floating-point operations Γ.
    pub fn ops(&self) -> u64 {
        self.adds + self.compares
    }

    /// Time steps Υ for the given selection mode.
    pub fn steps(&self, mode: SpMode) -> u64 {
        match mode {
            SpMode::Sequential => self.steps_seq,
            SpMode::Parallel => self.steps_par,
        }
    }

    pub fn step(&mut self, n: u64) {
        self.steps_seq += n;
        self.steps_par += n;
    }

    /// One `f` stage applied to `paths` nodes with `half` outputs each.
    pub fn charge_f(&mut self, paths: usize, half: usize) {
        self.compares += (paths * half) as u64;
        self.step(1);
    }

    /// One `g` stage applied to `paths` nodes with `half` outputs each.
    pub fn charge_g(&mut self, paths: usize, half: usize) {
        self.adds += (paths * half) as u64;
        self.step(1);
    }

    /// FHTs of length `len` on `paths` vectors.
    pub fn charge_fht(&mut self, paths: usize, len: usize) {
        let t = log2_ceil(len);
        self.adds += paths as u64 * t * len as u64;
        self.step(t);
    }

    /// A batch of `adds` path-metric additions done in one step.
    pub fn charge_pm(&mut self, adds: usize) {
        self.adds += adds as u64;
        self.step(1);
    }

    /// Keeping the best `keep` of `n` candidates: a max/min search when
    /// `keep == 1`, otherwise a merge sort.
    pub fn charge_prune(&mut self, n: usize, keep: usize) {
        if n <= keep || n <= 1 {
            return;
        }
        if keep == 1 {
            self.compares += (n - 1) as u64;
        } else {
            self.compares += n as u64 * log2_ceil(n);
        }
        self.step(log2_ceil(n));
    }

    /// Sorting `paths` arrays of `len` values each, in parallel.
    pub fn charge_sort(&mut self, paths: usize, len: usize) {
        if len <= 1 {
            return;
        }
        self.compares += (paths * len) as u64 * log2_ceil(len);
        self.step(log2_ceil(len));
    }

    /// Permutation selection at a node of stage `s` for `paths` paths and
    /// `candidates` permutations whose left child has order `child_order`.
    ///
    /// Each candidate costs an `f` stage plus its metric: an FHT of length
    /// `2^(s-1)` and a max search for a first-order child, a sum of
    /// magnitudes otherwise.
    pub fn charge_selection(
        &mut self,
        paths: usize,
        candidates: usize,
        s: usize,
        child_order: usize,
    ) {
        let half = 1usize << (s - 1);
        let evals = (paths * candidates) as u64;
        let h = half as u64;
        let per_candidate_steps = if child_order == 1 {
            self.compares += evals * (h + (h - 1) + 1);
            self.adds += evals * (s as u64 - 1) * h;
            1 + (s as u64 - 1) + 1
        } else {
            self.compares += evals * (h + 1);
            self.adds += evals * (h - 1);
            2
        };
        self.steps_seq += candidates as u64 * per_candidate_steps;
        self.steps_par += per_candidate_steps;
    }

    /// Folds in branches that ran concurrently: operations add up, the
    /// latency is that of the slowest branch.
    pub fn join_parallel(&mut self, branches: &[CostLedger]) {
        for b in branches {
            self.adds += b.adds;
            self.compares += b.compares;
        }
        self.steps_seq += branches.iter().map(|b| b.steps_seq).max().unwrap_or(0);
        self.steps_par += branches.iter().map(|b| b.steps_par).max().unwrap_or(0);
    }

    /// Folds in branches that share one decoder in the sequential model and
    /// run side by side in the parallel one.
    pub fn join_time_shared(&mut self, branches: &[CostLedger]) {
        for b in branches {
            self.adds += b.adds;
            self.compares += b.compares;
            self.steps_seq += b.steps_seq;
        }
        self.steps_par += branches.iter().map(|b| b.steps_par).max().unwrap_or(0);
    }
}

impl AddAssign for CostLedger {
    fn add_assign(&mut self, rhs: Self) {
        self.adds += rhs.adds;
        self.compares += rhs.compares;
        self.steps_seq += rhs.steps_seq;
        self.steps_par += rhs.steps_par;
    }
}

/// Memory requirement Φ in bits of SP-RLD / SSP-RLD (`ensemble = None`) or
/// Ens-SSP-RLD with `T` branches (`ensemble = Some(T)`), with `q` bits per LLR.
pub fn memory_bits(
    n: usize,
    m: usize,
    list_size: usize,
    q: usize,
    mode: SpMode,
    ensemble: Option<usize>,
) -> u64 {
    let (n, m, l, q) = (n as u64, m as u64, list_size as u64, q as u64);
    match ensemble {
        None => match (l > 1, mode) {
            (false, SpMode::Sequential) => 2 * n * q + m * q + n,
            (false, SpMode::Parallel) => (m + 1) * n * q + m * q + n,
            (true, SpMode::Sequential) => n * (l + 1) * q + m * q + 2 * n * l,
            (true, SpMode::Parallel) => n * (m * l + 1) * q + m * q + 2 * n * l,
        },
        Some(t) => {
            let t = t as u64;
            let branch = match (l > 1, mode) {
                (false, SpMode::Sequential) => n * q + m * q + n,
                (false, SpMode::Parallel) => m * n * q + m * q + n,
                (true, SpMode::Sequential) => n * l * q + m * q + 2 * n * l,
                (true, SpMode::Parallel) => m * n * l * q + m * q + 2 * n * l,
            };
            branch * t + n * q
        }
    }
}

/// Memory of a permuted SSC-FHT ensemble with `decoders` concurrent
/// single-path decoders, plus one channel-LLR buffer.
pub fn ssc_memory_bits(n: usize, decoders: usize, q: usize) -> u64 {
    let (n, d, q) = (n as u64, decoders as u64, q as u64);
    d * (n * q + n) + n * q
}

/// Bits to kilobytes (1 kB = 1024 bytes).
pub fn bits_to_kb(bits: u64) -> f64 {
    bits as f64 / 8.0 / 1024.0
}
