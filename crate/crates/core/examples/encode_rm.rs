//! Build a few RM codes, encode messages and check codeword membership.

use rand::Rng;
use rmsp::code::RmCode;
use rmsp::rng::stream;

fn main() -> rmsp::error::Result<()> {
    for (r, m) in [(1, 3), (2, 5), (2, 8), (4, 8), (2, 9)] {
        let code = RmCode::new(r, m)?;
        println!(
            "RM({r},{m}): N={} K={} d={} rate={:.3}",
            code.n(),
            code.k(),
            code.d(),
            code.rate()
        );
    }

    let code = RmCode::new(1, 3)?;
    println!("RM(1,3) information set {:?}", code.info());
    for word in code.codeword_set()? {
        let weight = word.iter().filter(|&&b| b == 1).count();
        println!("  {:?} weight {weight}", word);
    }

    let code = RmCode::new(2, 6)?;
    let mut rng = stream(42, &[]);
    let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
    let mut x = code.encode_message(&msg)?;
    println!("RM(2,6) codeword valid: {}", code.is_codeword(&x));
    x[5] ^= 1;
    println!(
        "after one bit flip: valid {}, syndrome weight {}",
        code.is_codeword(&x),
        code.syndrome(&x).len()
    );
    Ok(())
}
