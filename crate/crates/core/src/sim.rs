//! Monte-Carlo frame error rate simulation.
//!
//! Frame `f` of Eb/N0 point `p` draws its message and noise from stream
//! `(seed, p, f, 0)` and its decoder randomness from `(seed, p, f, 1)`.
//! Frames are decoded in fixed-size batches across worker threads and then
//! scanned in order, so the stop rule and every count are identical for any
//! worker count.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::baseline::{aut_ssc_fht_decode, ssc_fht_decode};
use crate::channel::ChannelConfig;
use crate::code::RmCode;
use crate::cost::{memory_bits, ssc_memory_bits, CostLedger, SpMode};
use crate::error::{Error, Result};
use crate::rng::stream;
use crate::sprld::{ens_ssp_rld_decode, DecodeOutput, SpConfig, SpRldDecoder};

/// Frames decoded per parallel batch.
pub const BATCH: usize = 64;
/// Largest dimension accepted by the brute-force ML decoder.
pub const ML_MAX_K: usize = 16;

/// Decoder families selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    SpRld,
    SspRld,
    EnsSspRld,
    SscFht,
    AutSscFht,
    MlOracle,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 6] = [
        DecoderKind::SpRld,
        DecoderKind::SspRld,
        DecoderKind::EnsSspRld,
        DecoderKind::SscFht,
        DecoderKind::AutSscFht,
        DecoderKind::MlOracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DecoderKind::SpRld => "sp-rld",
            DecoderKind::SspRld => "ssp-rld",
            DecoderKind::EnsSspRld => "ens-ssp-rld",
            DecoderKind::SscFht => "ssc-fht",
            DecoderKind::AutSscFht => "aut-ssc-fht",
            DecoderKind::MlOracle => "ml-oracle",
        }
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecoderKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown decoder '{s}'")))
    }
}

/// Optional numeric decoder parameters as given on the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecoderParams {
    pub list: Option<usize>,
    pub budget: Option<usize>,
    pub branches: Option<usize>,
    pub branch_list: Option<usize>,
    pub decoders: Option<usize>,
}

/// A fully parameterized decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderSpec {
    SpRld {
        list: usize,
    },
    SspRld {
        budget: usize,
        list: usize,
    },
    EnsSspRld {
        budget: usize,
        branch_list: usize,
        branches: usize,
    },
    SscFht,
    AutSscFht {
        decoders: usize,
    },
    MlOracle,
}

fn need(v: Option<usize>, flag: &str, kind: DecoderKind) -> Result<usize> {
    v.ok_or_else(|| Error::Config(format!("{} requires --{flag}", kind.name())))
}

fn positive(v: usize, flag: &str) -> Result<usize> {
    if v == 0 {
        Err(Error::Config(format!("--{flag} must be at least 1")))
    } else {
        Ok(v)
    }
}

impl DecoderSpec {
    pub fn from_params(kind: DecoderKind, p: DecoderParams) -> Result<Self> {
        Ok(match kind {
            DecoderKind::SpRld => DecoderSpec::SpRld {
                list: positive(need(p.list, "L", kind)?, "L")?,
            },
            DecoderKind::SspRld => DecoderSpec::SspRld {
                budget: need(p.budget, "S", kind)?,
                list: positive(need(p.list, "L", kind)?, "L")?,
            },
            DecoderKind::EnsSspRld => DecoderSpec::EnsSspRld {
                budget: need(p.budget, "S", kind)?,
                branch_list: positive(need(p.branch_list, "Lp", kind)?, "Lp")?,
                branches: positive(need(p.branches, "T", kind)?, "T")?,
            },
            DecoderKind::SscFht => DecoderSpec::SscFht,
            DecoderKind::AutSscFht => DecoderSpec::AutSscFht {
                decoders: positive(need(p.decoders, "P", kind)?, "P")?,
            },
            DecoderKind::MlOracle => DecoderSpec::MlOracle,
        })
    }

    pub fn kind(&self) -> DecoderKind {
        match self {
            DecoderSpec::SpRld { .. } => DecoderKind::SpRld,
            DecoderSpec::SspRld { .. } => DecoderKind::SspRld,
            DecoderSpec::EnsSspRld { .. } => DecoderKind::EnsSspRld,
            DecoderSpec::SscFht => DecoderKind::SscFht,
            DecoderSpec::AutSscFht { .. } => DecoderKind::AutSscFht,
            DecoderSpec::MlOracle => DecoderKind::MlOracle,
        }
    }

    pub fn params(&self) -> DecoderParams {
        let mut p = DecoderParams::default();
        match *self {
            DecoderSpec::SpRld { list } => p.list = Some(list),
            DecoderSpec::SspRld { budget, list } => {
                p.budget = Some(budget);
                p.list = Some(list);
            }
            DecoderSpec::EnsSspRld {
                budget,
                branch_list,
                branches,
            } => {
                p.budget = Some(budget);
                p.branch_list = Some(branch_list);
                p.branches = Some(branches);
            }
            DecoderSpec::AutSscFht { decoders } => p.decoders = Some(decoders),
            DecoderSpec::SscFht | DecoderSpec::MlOracle => {}
        }
        p
    }

    /// Memory model for `code` with `q`-bit LLRs; zero for the ML oracle.
    pub fn memory_bits(&self, code: &RmCode, q: usize, mode: SpMode) -> u64 {
        let (n, m) = (code.n(), code.m());
        match *self {
            DecoderSpec::SpRld { list } | DecoderSpec::SspRld { list, .. } => {
                memory_bits(n, m, list, q, mode, None)
            }
            DecoderSpec::EnsSspRld {
                branch_list,
                branches,
                ..
            } => memory_bits(n, m, branch_list, q, mode, Some(branches)),
            DecoderSpec::SscFht => ssc_memory_bits(n, 1, q),
            DecoderSpec::AutSscFht { decoders } => match mode {
                SpMode::Sequential => ssc_memory_bits(n, 1, q),
                SpMode::Parallel => ssc_memory_bits(n, decoders, q),
            },
            DecoderSpec::MlOracle => 0,
        }
    }

    /// Builds the decoder for `code`, validating every parameter.
    pub fn prepare(&self, code: &RmCode) -> Result<PreparedDecoder> {
        let inner = match *self {
            DecoderSpec::SpRld { list } => {
                Prepared::Sp(SpRldDecoder::new(code.clone(), SpConfig::sp_rld(list))?)
            }
            DecoderSpec::SspRld { budget, list } => Prepared::Sp(SpRldDecoder::new(
                code.clone(),
                SpConfig::ssp_rld(budget, list),
            )?),
            DecoderSpec::EnsSspRld {
                budget,
                branch_list,
                branches,
            } => {
                let cfg = SpConfig::ssp_rld(budget, branch_list);
                SpRldDecoder::new(code.clone(), cfg.clone())?;
                Prepared::Ens(cfg, positive(branches, "T")?)
            }
            DecoderSpec::SscFht => {
                ssc_fht_decode(&vec![0.0; code.n()], code, &mut CostLedger::new())?;
                Prepared::Ssc
            }
            DecoderSpec::AutSscFht { decoders } => {
                ssc_fht_decode(&vec![0.0; code.n()], code, &mut CostLedger::new())?;
                Prepared::Aut(positive(decoders, "P")?)
            }
            DecoderSpec::MlOracle => Prepared::Ml(MlOracle::new(code)?),
        };
        Ok(PreparedDecoder {
            code: code.clone(),
            inner,
        })
    }
}

impl fmt::Display for DecoderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DecoderSpec::SpRld { list } => write!(f, "SP-RLD-{list}"),
            DecoderSpec::SspRld { budget, list } => write!(f, "SSP-RLD-{budget}-{list}"),
            DecoderSpec::EnsSspRld {
                budget,
                branch_list,
                branches,
            } => write!(f, "Ens-SSP-RLD-{budget}-{branch_list}-{branches}"),
            DecoderSpec::SscFht => write!(f, "SSC-FHT"),
            DecoderSpec::AutSscFht { decoders } => write!(f, "Aut-SSC-FHT-{decoders}"),
            DecoderSpec::MlOracle => write!(f, "ML"),
        }
    }
}

#[derive(Debug, Clone)]
enum Prepared {
    Sp(SpRldDecoder),
    Ens(SpConfig, usize),
    Ssc,
    Aut(usize),
    Ml(MlOracle),
}

/// A decoder bound to one code.
#[derive(Debug, Clone)]
pub struct PreparedDecoder {
    code: RmCode,
    inner: Prepared,
}

impl PreparedDecoder {
    pub fn decode<R: Rng + ?Sized>(
        &self,
        llr: &[f64],
        rng: &mut R,
        ledger: &mut CostLedger,
    ) -> Result<DecodeOutput> {
        let code = &self.code;
        match &self.inner {
            Prepared::Sp(dec) => dec.decode(llr, rng, ledger),
            Prepared::Ens(cfg, t) => ens_ssp_rld_decode(llr, code, cfg, *t, rng, ledger),
            Prepared::Ssc => ssc_fht_decode(llr, code, ledger)
                .map(|(codeword, pm)| DecodeOutput { codeword, pm }),
            Prepared::Aut(p) => aut_ssc_fht_decode(llr, code, *p, rng, ledger),
            Prepared::Ml(ml) => {
                let codeword = ml.decode(llr)?;
                let pm = disagreement(&codeword, llr);
                Ok(DecodeOutput { codeword, pm })
            }
        }
    }
}

/// `Σ (1 - 2 x_i) α_i`.
pub fn correlation(x: &[u8], alpha: &[f64]) -> f64 {
    x.iter()
        .zip(alpha)
        .map(|(&b, &a)| if b == 0 { a } else { -a })
        .sum()
}

fn disagreement(x: &[u8], alpha: &[f64]) -> f64 {
    x.iter()
        .zip(alpha)
        .filter(|&(&b, &a)| (a < 0.0) != (b == 1))
        .map(|(_, a)| a.abs())
        .sum()
}

/// Exhaustive ML decoder for codes with `K <= 16`.
#[derive(Debug, Clone)]
pub struct MlOracle {
    words: Vec<Vec<u8>>,
}

impl MlOracle {
    pub fn new(code: &RmCode) -> Result<Self> {
        if code.k() > ML_MAX_K {
            return Err(Error::TooManyCodewords {
                k: code.k(),
                limit: ML_MAX_K,
            });
        }
        Ok(MlOracle {
            words: code.codeword_set()?,
        })
    }

    /// The codeword of largest correlation; the lowest index wins ties.
    pub fn decode(&self, alpha: &[f64]) -> Result<Vec<u8>> {
        let n = self.words[0].len();
        if alpha.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: alpha.len(),
            });
        }
        let mut best = 0;
        let mut best_corr = f64::NEG_INFINITY;
        for (i, w) in self.words.iter().enumerate() {
            let c = correlation(w, alpha);
            if c > best_corr {
                best = i;
                best_corr = c;
            }
        }
        Ok(self.words[best].clone())
    }
}

pub fn ml_oracle_decode(alpha: &[f64], code: &RmCode) -> Result<Vec<u8>> {
    MlOracle::new(code)?.decode(alpha)
}

/// True when decoding failed and the output is at least as likely as the
/// transmitted word, so an ML decoder would have failed as well.
pub fn ml_bound_flag(x_hat: &[u8], x_true: &[u8], alpha: &[f64]) -> bool {
    x_hat != x_true && correlation(x_hat, alpha) >= correlation(x_true, alpha)
}

/// One simulation run: a decoder over a list of Eb/N0 points.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub code: RmCode,
    pub decoder: DecoderSpec,
    pub ebn0_db: Vec<f64>,
    pub max_frames: u64,
    pub target_errors: u64,
    pub seed: u64,
    /// Worker threads; 0 uses all available cores.
    pub workers: usize,
    pub sp_mode: SpMode,
    /// Bits per stored LLR in the memory model.
    pub q: usize,
    /// Replace the channel by an almost noiseless one.
    pub noiseless: bool,
}

impl SimConfig {
    pub fn new(code: RmCode, decoder: DecoderSpec) -> Self {
        SimConfig {
            code,
            decoder,
            ebn0_db: Vec::new(),
            max_frames: 100_000,
            target_errors: 100,
            seed: 1,
            workers: 0,
            sp_mode: SpMode::Sequential,
            q: 32,
            noiseless: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ebn0_db.is_empty() && !self.noiseless {
            return Err(Error::Config("no Eb/N0 points given".into()));
        }
        if self.max_frames == 0 {
            return Err(Error::Config("--max-frames must be at least 1".into()));
        }
        if self.target_errors == 0 {
            return Err(Error::Config("--target-errors must be at least 1".into()));
        }
        for &e in &self.ebn0_db {
            ChannelConfig::new(e, self.code.rate())?;
        }
        self.decoder.prepare(&self.code).map(|_| ())
    }
}

/// Result of one Eb/N0 point. `gamma` and the latencies are per-frame means.
#[derive(Debug, Clone, PartialEq)]
pub struct FerRecord {
    pub r: usize,
    pub m: usize,
    pub decoder: String,
    pub params: DecoderParams,
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
    pub ml_bound_errors: u64,
    pub gamma: f64,
    pub upsilon_seq: f64,
    pub upsilon_par: f64,
    pub phi_bits: u64,
    pub wall_seconds: f64,
    pub seed: u64,
}

impl FerRecord {
    pub fn ml_bound_fer(&self) -> f64 {
        self.ml_bound_errors as f64 / self.frames as f64
    }
}

struct FrameResult {
    error: bool,
    ml_bound: bool,
    ledger: CostLedger,
}

fn simulate_frame(
    cfg: &SimConfig,
    dec: &PreparedDecoder,
    channel: &ChannelConfig,
    point: u64,
    frame: u64,
) -> Result<FrameResult> {
    let code = &cfg.code;
    let mut rng = stream(cfg.seed, &[point, frame, 0]);
    let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
    let x = code.encode_message(&msg)?;
    let llr = channel.observe(&x, &mut rng);
    let mut ledger = CostLedger::new();
    let out = dec.decode(&llr, &mut stream(cfg.seed, &[point, frame, 1]), &mut ledger)?;
    let error = out.codeword != x;
    Ok(FrameResult {
        error,
        ml_bound: error && ml_bound_flag(&out.codeword, &x, &llr),
        ledger,
    })
}

fn run_point(cfg: &SimConfig, dec: &PreparedDecoder, point: u64, ebn0: f64) -> Result<FerRecord> {
    let start = Instant::now();
    let channel = if cfg.noiseless {
        ChannelConfig::noiseless(cfg.code.rate())
    } else {
        ChannelConfig::new(ebn0, cfg.code.rate())?
    };
    let (mut frames, mut errors, mut ml_errors) = (0u64, 0u64, 0u64);
    let mut total = CostLedger::new();
    'outer: while frames < cfg.max_frames && errors < cfg.target_errors {
        let end = (frames + BATCH as u64).min(cfg.max_frames);
        let batch: Vec<FrameResult> = (frames..end)
            .into_par_iter()
            .map(|f| simulate_frame(cfg, dec, &channel, point, f))
            .collect::<Result<_>>()?;
        for res in batch {
            frames += 1;
            errors += res.error as u64;
            ml_errors += res.ml_bound as u64;
            total += res.ledger;
            if errors >= cfg.target_errors {
                break 'outer;
            }
        }
    }
    let per_frame = |v: u64| v as f64 / frames as f64;
    Ok(FerRecord {
        r: cfg.code.r(),
        m: cfg.code.m(),
        decoder: cfg.decoder.to_string(),
        params: cfg.decoder.params(),
        ebn0_db: ebn0,
        frames,
        frame_errors: errors,
        fer: errors as f64 / frames as f64,
        ml_bound_errors: ml_errors,
        gamma: per_frame(total.ops()),
        upsilon_seq: per_frame(total.steps(SpMode::Sequential)),
        upsilon_par: per_frame(total.steps(SpMode::Parallel)),
        phi_bits: cfg.decoder.memory_bits(&cfg.code, cfg.q, cfg.sp_mode),
        wall_seconds: start.elapsed().as_secs_f64(),
        seed: cfg.seed,
    })
}

/// Runs every Eb/N0 point of `cfg` and returns one record per point.
pub fn run_fer(cfg: &SimConfig) -> Result<Vec<FerRecord>> {
    cfg.validate()?;
    let dec = cfg.decoder.prepare(&cfg.code)?;
    let points: Vec<f64> = if cfg.ebn0_db.is_empty() {
        vec![f64::INFINITY]
    } else {
        cfg.ebn0_db.clone()
    };
    let run = || {
        points
            .iter()
            .enumerate()
            .map(|(p, &e)| run_point(cfg, &dec, p as u64, e))
            .collect()
    };
    if cfg.workers == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", cfg.workers)))?
            .install(run)
    }
}

pub const CSV_HEADER: [&str; 21] = [
    "r",
    "m",
    "decoder",
    "S",
    "L",
    "Lp",
    "T",
    "P",
    "ebn0_db",
    "frames",
    "frame_errors",
    "fer",
    "ml_bound_errors",
    "ml_bound_fer",
    "gamma",
    "upsilon_seq",
    "upsilon_par",
    "phi_bits",
    "phi_kb",
    "wall_seconds",
    "seed",
];

fn sci(v: f64) -> String {
    format!("{v:.5e}")
}

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes `records` as CSV with a fixed header.
pub fn write_csv<W: Write>(records: &[FerRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Config(format!("writing CSV: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for rec in records {
        let p = rec.params;
        w.write_record([
            rec.r.to_string(),
            rec.m.to_string(),
            rec.decoder.clone(),
            opt(p.budget),
            opt(p.list),
            opt(p.branch_list),
            opt(p.branches),
            opt(p.decoders),
            sci(rec.ebn0_db),
            rec.frames.to_string(),
            rec.frame_errors.to_string(),
            sci(rec.fer),
            rec.ml_bound_errors.to_string(),
            sci(rec.ml_bound_fer()),
            sci(rec.gamma),
            sci(rec.upsilon_seq),
            sci(rec.upsilon_par),
            rec.phi_bits.to_string(),
            sci(crate::cost::bits_to_kb(rec.phi_bits)),
            sci(rec.wall_seconds),
            rec.seed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Config(format!("writing CSV: {e}")))?;
    Ok(())
}

/// Writes `ebn0 fer` columns per decoder, one whitespace-separated block
/// per series, ready for gnuplot-style tools.
pub fn write_plot_data<W: Write>(records: &[FerRecord], mut out: W) -> std::io::Result<()> {
    let mut series: Vec<(String, Vec<&FerRecord>)> = Vec::new();
    for rec in records {
        let name = format!("RM({},{}) {}", rec.r, rec.m, rec.decoder);
        match series.iter_mut().find(|(n, _)| *n == name) {
            Some((_, v)) => v.push(rec),
            None => series.push((name, vec![rec])),
        }
    }
    for (i, (name, recs)) in series.iter().enumerate() {
        if i > 0 {
            writeln!(out, "\n")?;
        }
        writeln!(out, "# {name}")?;
        writeln!(out, "# ebn0_db fer ml_bound_fer")?;
        for rec in recs {
            writeln!(
                out,
                "{} {} {}",
                sci(rec.ebn0_db),
                sci(rec.fer),
                sci(rec.ml_bound_fer())
            )?;
        }
    }
    Ok(())
}
