//! Frame error rate simulation of RM decoders over BPSK/AWGN.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rmsp::code::RmCode;
use rmsp::cost::SpMode;
use rmsp::error::{Error, Result};
use rmsp::sim::{run_fer, write_csv, DecoderKind, DecoderParams, DecoderSpec, SimConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Decoder {
    SpRld,
    SspRld,
    EnsSspRld,
    SscFht,
    AutSscFht,
    MlOracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Seq,
    Par,
}

#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// Code order and log-length, e.g. `2,8`.
    #[arg(long, value_name = "R,M")]
    code: String,
    #[arg(long, value_enum)]
    decoder: Decoder,
    /// List size.
    #[arg(long = "L")]
    list: Option<usize>,
    /// Number of left-child visits with permutation selection.
    #[arg(long = "S")]
    budget: Option<usize>,
    /// Ensemble branches.
    #[arg(long = "T")]
    branches: Option<usize>,
    /// List size per ensemble branch.
    #[arg(long = "Lp")]
    branch_list: Option<usize>,
    /// Automorphism decoders.
    #[arg(long = "P")]
    decoders: Option<usize>,
    /// Comma-separated Eb/N0 points in dB.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required_unless_present = "noiseless"
    )]
    ebn0: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    max_frames: u64,
    #[arg(long, default_value_t = 100)]
    target_errors: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Latency model reported in the memory column.
    #[arg(long, value_enum, default_value_t = Mode::Seq)]
    sp_mode: Mode,
    /// Bits per stored LLR in the memory model.
    #[arg(long, default_value_t = 32)]
    q: usize,
    /// Run an almost noiseless channel as a sanity check.
    #[arg(long)]
    noiseless: bool,
    /// CSV output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_code(s: &str) -> Result<RmCode> {
    let bad = || Error::Config(format!("--code expects r,m but got '{s}'"));
    let (r, m) = s.split_once(',').ok_or_else(bad)?;
    let r = r.trim().parse().map_err(|_| bad())?;
    let m = m.trim().parse().map_err(|_| bad())?;
    RmCode::new(r, m)
}

fn config(args: &Args) -> Result<SimConfig> {
    let kind = match args.decoder {
        Decoder::SpRld => DecoderKind::SpRld,
        Decoder::SspRld => DecoderKind::SspRld,
        Decoder::EnsSspRld => DecoderKind::EnsSspRld,
        Decoder::SscFht => DecoderKind::SscFht,
        Decoder::AutSscFht => DecoderKind::AutSscFht,
        Decoder::MlOracle => DecoderKind::MlOracle,
    };
    let params = DecoderParams {
        list: args.list,
        budget: args.budget,
        branches: args.branches,
        branch_list: args.branch_list,
        decoders: args.decoders,
    };
    let mut cfg = SimConfig::new(
        parse_code(&args.code)?,
        DecoderSpec::from_params(kind, params)?,
    );
    cfg.ebn0_db = args.ebn0.clone();
    cfg.max_frames = args.max_frames;
    cfg.target_errors = args.target_errors;
    cfg.seed = args.seed;
    cfg.workers = args.workers;
    cfg.sp_mode = match args.sp_mode {
        Mode::Seq => SpMode::Sequential,
        Mode::Par => SpMode::Parallel,
    };
    cfg.q = args.q;
    cfg.noiseless = args.noiseless;
    cfg.validate()?;
    Ok(cfg)
}

fn run(args: &Args) -> Result<()> {
    let cfg = config(args)?;
    let records = run_fer(&cfg)?;
    match &args.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            write_csv(&records, BufWriter::new(file))
        }
        None => write_csv(&records, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rm-sim: {e}");
            ExitCode::from(2)
        }
    }
}
