//! FER curves of several decoders on RM(2,8), written as CSV and as plot
//! data.
//!
//! ```text
//! cargo run --release --example fer_curve -- /tmp/rm28
//! ```

use std::fs::File;
use std::io::BufWriter;

use rmsp::code::RmCode;
use rmsp::sim::{run_fer, write_csv, write_plot_data, DecoderSpec, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prefix = std::env::args().nth(1).unwrap_or_else(|| "rm28".into());
    let code = RmCode::new(2, 8)?;
    let decoders = [
        DecoderSpec::SspRld { budget: 3, list: 8 },
        DecoderSpec::EnsSspRld {
            budget: 3,
            branch_list: 1,
            branches: 8,
        },
        DecoderSpec::AutSscFht { decoders: 48 },
    ];
    let mut records = Vec::new();
    for decoder in decoders {
        let mut cfg = SimConfig::new(code.clone(), decoder);
        cfg.ebn0_db = vec![0.5, 1.0, 1.5];
        cfg.target_errors = 100;
        cfg.max_frames = 50_000;
        for rec in run_fer(&cfg)? {
            println!(
                "{:<22} {:>4.1} dB  FER {:.3e}  ML bound {:.3e}",
                rec.decoder,
                rec.ebn0_db,
                rec.fer,
                rec.ml_bound_fer()
            );
            records.push(rec);
        }
    }
    write_csv(
        &records,
        BufWriter::new(File::create(format!("{prefix}.csv"))?),
    )?;
    write_plot_data(
        &records,
        BufWriter::new(File::create(format!("{prefix}.dat"))?),
    )?;
    println!("wrote {prefix}.csv and {prefix}.dat");
    Ok(())
}
