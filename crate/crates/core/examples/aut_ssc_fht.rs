//! The automorphism-ensemble SSC-FHT baseline for growing ensemble sizes.

use rmsp::code::RmCode;
use rmsp::sim::{run_fer, DecoderSpec, SimConfig};

fn main() -> rmsp::error::Result<()> {
    let code = RmCode::new(2, 7)?;
    for p in [1, 4, 16, 48] {
        let mut cfg = SimConfig::new(code.clone(), DecoderSpec::AutSscFht { decoders: p });
        cfg.ebn0_db = vec![1.5];
        cfg.target_errors = 50;
        cfg.max_frames = 20_000;
        let rec = run_fer(&cfg)?.remove(0);
        println!(
            "P={p:<3} FER {:.3e}  ML bound {:.3e}  ops {:.0}  steps seq {:.0} par {:.0}",
            rec.fer,
            rec.ml_bound_fer(),
            rec.gamma,
            rec.upsilon_seq,
            rec.upsilon_par
        );
    }
    Ok(())
}
