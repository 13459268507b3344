//! Affine permutations of bit indices map RM codewords to codewords.

use rand::Rng;
use rmsp::code::RmCode;
use rmsp::perm::AffinePerm;
use rmsp::rng::stream;

fn main() -> rmsp::error::Result<()> {
    let mut rng = stream(7, &[]);

    // swapping the two lowest index bits of a length-4 node
    let swap = AffinePerm::from_layer_map(&[1, 0])?;
    println!("swap {swap}: {:?}", swap.permute(&[0, 1, 2, 3]));

    let p = AffinePerm::sample_affine(4, &mut rng);
    let q = AffinePerm::sample_affine(4, &mut rng);
    println!("p = {p}\nq = {q}");
    println!("p index table {:?}", p.index_table());
    let v: Vec<u32> = (0..16).collect();
    assert_eq!(p.inverse().permute(&p.permute(&v)), v);
    assert_eq!(p.compose(&q).permute(&v), p.permute(&q.permute(&v)));
    let parsed: AffinePerm = p.to_string().parse()?;
    assert_eq!(parsed, p);

    let stage = AffinePerm::sample_stage(4, &mut rng);
    println!(
        "stage permutation {stage} (factor-graph: {})",
        stage.is_stage_permutation()
    );

    let code = RmCode::new(2, 5)?;
    let mut kept = 0;
    for _ in 0..1000 {
        let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
        let x = code.encode_message(&msg)?;
        let pi = AffinePerm::sample_affine(code.m(), &mut rng);
        kept += code.is_codeword(&pi.permute(&x)) as usize;
    }
    println!("RM(2,5): {kept}/1000 permuted codewords are codewords");
    Ok(())
}
