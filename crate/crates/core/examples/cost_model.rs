//! Operation count, latency and memory of the decoders on one frame.
//!
//! ```text
//! cargo run --release --example cost_model
//! ```

use rmsp::baseline::aut_ssc_fht_decode;
use rmsp::code::RmCode;
use rmsp::cost::{bits_to_kb, memory_bits, ssc_memory_bits, CostLedger, SpMode};
use rmsp::rng::stream;
use rmsp::sprld::{ens_ssp_rld_decode, SpConfig, SpRldDecoder};

const Q: usize = 32;

fn report(name: &str, ledger: &CostLedger, seq_bits: u64, par_bits: u64) {
    println!(
        "{name:<28} ops {:>8}  steps seq {:>4} par {:>4}  mem seq {:>6.1} kB par {:>6.1} kB",
        ledger.ops(),
        ledger.steps(SpMode::Sequential),
        ledger.steps(SpMode::Parallel),
        bits_to_kb(seq_bits),
        bits_to_kb(par_bits),
    );
}

fn main() -> rmsp::error::Result<()> {
    for (r, m, s, l) in [(2, 9, 4, 2), (2, 8, 3, 8), (2, 8, 3, 2), (3, 7, 2, 4)] {
        let code = RmCode::new(r, m)?;
        let llr = vec![1.0; code.n()];
        let mut ledger = CostLedger::new();
        SpRldDecoder::new(code.clone(), SpConfig::ssp_rld(s, l))?.decode(
            &llr,
            &mut stream(0, &[]),
            &mut ledger,
        )?;
        report(
            &format!("RM({r},{m}) SSP-RLD-{s}-{l}"),
            &ledger,
            memory_bits(code.n(), m, l, Q, SpMode::Sequential, None),
            memory_bits(code.n(), m, l, Q, SpMode::Parallel, None),
        );
    }

    let code = RmCode::new(2, 8)?;
    let llr = vec![1.0; code.n()];
    let mut ledger = CostLedger::new();
    ens_ssp_rld_decode(
        &llr,
        &code,
        &SpConfig::ssp_rld(3, 1),
        8,
        &mut stream(0, &[]),
        &mut ledger,
    )?;
    report(
        "RM(2,8) Ens-SSP-RLD-3-1-8",
        &ledger,
        memory_bits(code.n(), 8, 1, Q, SpMode::Sequential, Some(8)),
        memory_bits(code.n(), 8, 1, Q, SpMode::Parallel, Some(8)),
    );

    for p in [1, 48] {
        let mut ledger = CostLedger::new();
        aut_ssc_fht_decode(&llr, &code, p, &mut stream(0, &[]), &mut ledger)?;
        report(
            &format!("RM(2,8) Aut-SSC-FHT-{p}"),
            &ledger,
            ssc_memory_bits(code.n(), 1, Q),
            ssc_memory_bits(code.n(), p, Q),
        );
    }
    Ok(())
}
