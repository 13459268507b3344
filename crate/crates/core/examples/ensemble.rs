//! Ens-SSP-RLD: several small-list decoders on independent random streams,
//! compared with a single decoder of the same total list size.

use rmsp::code::RmCode;
use rmsp::sim::{run_fer, DecoderSpec, SimConfig};

fn main() -> rmsp::error::Result<()> {
    let code = RmCode::new(2, 7)?;
    let decoders = [
        DecoderSpec::SspRld { budget: 3, list: 1 },
        DecoderSpec::SspRld { budget: 3, list: 8 },
        DecoderSpec::EnsSspRld {
            budget: 3,
            branch_list: 1,
            branches: 8,
        },
        DecoderSpec::EnsSspRld {
            budget: 3,
            branch_list: 2,
            branches: 4,
        },
    ];
    for decoder in decoders {
        let mut cfg = SimConfig::new(code.clone(), decoder);
        cfg.ebn0_db = vec![1.5];
        cfg.target_errors = 50;
        cfg.max_frames = 20_000;
        let rec = run_fer(&cfg)?.remove(0);
        println!(
            "{:<22} FER {:.3e} ({} / {})  ops {:.0}  steps seq {:.0} par {:.0}",
            rec.decoder,
            rec.fer,
            rec.frame_errors,
            rec.frames,
            rec.gamma,
            rec.upsilon_seq,
            rec.upsilon_par
        );
    }
    Ok(())
}
