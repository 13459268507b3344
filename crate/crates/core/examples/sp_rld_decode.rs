//! Decode one noisy RM(2,8) frame with SP-RLD and SSP-RLD and show which
//! nodes used permutation selection.
//!
//! ```text
//! cargo run --release --example sp_rld_decode
//! ```

use rand::Rng;
use rmsp::channel::ChannelConfig;
use rmsp::code::RmCode;
use rmsp::cost::{CostLedger, SpMode};
use rmsp::rng::stream;
use rmsp::sprld::{SpConfig, SpRldDecoder};

fn main() -> rmsp::error::Result<()> {
    let code = RmCode::new(2, 8)?;
    let channel = ChannelConfig::new(1.5, code.rate())?;
    let mut rng = stream(2024, &[]);

    let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
    let x = code.encode_message(&msg)?;
    let llr = channel.observe(&x, &mut rng);
    let raw_errors = llr
        .iter()
        .zip(&x)
        .filter(|&(&a, &b)| (a < 0.0) != (b == 1))
        .count();
    println!(
        "RM(2,8) at {} dB: {raw_errors} hard-decision errors",
        channel.ebn0_db
    );

    for cfg in [
        SpConfig::sp_rld(8),
        SpConfig::ssp_rld(3, 8),
        SpConfig::ssp_rld(0, 8),
    ] {
        let dec = SpRldDecoder::new(code.clone(), cfg.clone())?;
        let mut ledger = CostLedger::new();
        let (out, trace) = dec.decode_traced(&llr, &mut rng, &mut ledger)?;
        let selected: Vec<String> = trace
            .iter()
            .filter(|v| v.permuted)
            .map(|v| format!("({},{})", v.node.r, v.node.s))
            .collect();
        println!(
            "budget {:?}: correct {}, pm {:.2}, steps {}, ops {}, selection at {}",
            cfg.sp_budget,
            out.codeword == x,
            out.pm,
            ledger.steps(SpMode::Sequential),
            ledger.ops(),
            selected.join(" ")
        );
    }

    // the schedule on RM(3,5) with two selections
    let dec = SpRldDecoder::new(RmCode::new(3, 5)?, SpConfig::ssp_rld(2, 2))?;
    let (_, trace) = dec.decode_traced(&[1.0; 32], &mut rng, &mut CostLedger::new())?;
    for v in trace {
        println!("RM({},{}) permuted={}", v.node.r, v.node.s, v.permuted);
    }
    Ok(())
}
