mod common;

use proptest::prelude::*;
use rmsp::baseline::{aut_ssc_fht_decode, ssc_fht_decode};
use rmsp::channel::ChannelConfig;
use rmsp::code::RmCode;
use rmsp::cost::CostLedger;
use rmsp::rng::stream;
use rmsp::sim::{run_fer, DecoderSpec, MlOracle, SimConfig};
use rmsp::sprld::{PermSampler, SpConfig, SpRldDecoder};

use common::{correlation, random_word};

fn standard_error(fer: f64, frames: u64) -> f64 {
    (fer * (1.0 - fer) / frames as f64).sqrt()
}

fn fixed_frames(
    code: RmCode,
    decoder: DecoderSpec,
    ebn0: f64,
    frames: u64,
    seed: u64,
) -> (f64, u64) {
    let mut cfg = SimConfig::new(code, decoder);
    cfg.ebn0_db = vec![ebn0];
    cfg.max_frames = frames;
    cfg.target_errors = u64::MAX;
    cfg.seed = seed;
    let rec = run_fer(&cfg).unwrap().remove(0);
    (rec.fer, rec.frames)
}

#[test]
fn large_list_tracks_ml_on_rm24() {
    let code = RmCode::new(2, 4).unwrap();
    let ml = MlOracle::new(&code).unwrap();
    let ch = ChannelConfig::new(3.0, code.rate()).unwrap();
    let dec = SpRldDecoder::new(code.clone(), SpConfig::sp_rld(16)).unwrap();
    let mut rng = stream(1, &[]);
    let frames = 2000;
    let mut agree = 0;
    for _ in 0..frames {
        let x = random_word(&code, &mut rng);
        let llr = ch.observe(&x, &mut rng);
        let best = ml.decode(&llr).unwrap();
        let out = dec
            .decode(&llr, &mut rng, &mut CostLedger::new())
            .unwrap()
            .codeword;
        assert!(correlation(&out, &llr) <= correlation(&best, &llr) + 1e-9);
        agree += (out == best) as usize;
    }
    assert!(agree * 100 >= 95 * frames, "agreement {agree}/{frames}");
}

#[test]
fn identity_stubbed_list_decoder_matches_ssc() {
    let code = RmCode::new(2, 6).unwrap();
    let ch = ChannelConfig::new(1.0, code.rate()).unwrap();
    let cfg = SpConfig::ssp_rld(0, 1).with_sampler(PermSampler::Identity);
    let dec = SpRldDecoder::new(code.clone(), cfg).unwrap();
    let mut rng = stream(2, &[]);
    for _ in 0..1000 {
        let llr = ch.observe(&random_word(&code, &mut rng), &mut rng);
        let out = dec.decode(&llr, &mut rng, &mut CostLedger::new()).unwrap();
        let (x, pm) = ssc_fht_decode(&llr, &code, &mut CostLedger::new()).unwrap();
        assert_eq!(out.codeword, x);
        assert!((out.pm - pm).abs() <= 1e-9 * pm.max(1.0));
    }
}

#[test]
fn identity_selection_equals_unpermuted_list_decoding() {
    let code = RmCode::new(3, 7).unwrap();
    let ch = ChannelConfig::new(1.0, code.rate()).unwrap();
    let sp = SpRldDecoder::new(
        code.clone(),
        SpConfig::sp_rld(4).with_sampler(PermSampler::Identity),
    )
    .unwrap();
    let plain = SpRldDecoder::new(
        code.clone(),
        SpConfig::ssp_rld(0, 4).with_sampler(PermSampler::Identity),
    )
    .unwrap();
    let mut rng = stream(3, &[]);
    for _ in 0..300 {
        let llr = ch.observe(&random_word(&code, &mut rng), &mut rng);
        let a = sp.decode(&llr, &mut rng, &mut CostLedger::new()).unwrap();
        let b = plain
            .decode(&llr, &mut rng, &mut CostLedger::new())
            .unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn larger_lists_do_not_hurt() {
    let code = RmCode::new(2, 6).unwrap();
    let (fer2, n) = fixed_frames(
        code.clone(),
        DecoderSpec::SspRld { budget: 2, list: 2 },
        1.5,
        10_000,
        4,
    );
    let (fer8, _) = fixed_frames(
        code,
        DecoderSpec::SspRld { budget: 2, list: 8 },
        1.5,
        10_000,
        4,
    );
    assert!(
        fer8 <= fer2 + 3.0 * standard_error(fer2, n),
        "L=8 {fer8} vs L=2 {fer2}"
    );
}

#[test]
fn more_automorphisms_do_not_hurt() {
    let code = RmCode::new(2, 6).unwrap();
    let (fer1, n) = fixed_frames(
        code.clone(),
        DecoderSpec::AutSscFht { decoders: 1 },
        1.5,
        5000,
        5,
    );
    let (fer48, _) = fixed_frames(code, DecoderSpec::AutSscFht { decoders: 48 }, 1.5, 5000, 5);
    assert!(
        fer48 <= fer1 + 3.0 * standard_error(fer1, n),
        "P=48 {fer48} vs P=1 {fer1}"
    );
}

#[test]
fn list_decoder_does_not_beat_ml() {
    let code = RmCode::new(2, 4).unwrap();
    let (ml, n) = fixed_frames(code.clone(), DecoderSpec::MlOracle, 1.0, 10_000, 6);
    let (sp, _) = fixed_frames(code, DecoderSpec::SpRld { list: 4 }, 1.0, 10_000, 6);
    assert!(
        sp >= ml - 3.0 * standard_error(ml, n),
        "SP-RLD {sp} vs ML {ml}"
    );
}

#[test]
fn all_zero_codeword_gives_the_same_fer() {
    let code = RmCode::new(2, 6).unwrap();
    let ch = ChannelConfig::new(1.0, code.rate()).unwrap();
    let dec = SpRldDecoder::new(code.clone(), SpConfig::ssp_rld(2, 4)).unwrap();
    let frames = 10_000u64;
    let mut rng = stream(7, &[]);
    let (mut random_err, mut zero_err) = (0u64, 0u64);
    for _ in 0..frames {
        let x = random_word(&code, &mut rng);
        let out = dec
            .decode(&ch.observe(&x, &mut rng), &mut rng, &mut CostLedger::new())
            .unwrap();
        random_err += (out.codeword != x) as u64;
        let zero = vec![0u8; code.n()];
        let out = dec
            .decode(
                &ch.observe(&zero, &mut rng),
                &mut rng,
                &mut CostLedger::new(),
            )
            .unwrap();
        zero_err += (out.codeword != zero) as u64;
    }
    let (a, b) = (
        random_err as f64 / frames as f64,
        zero_err as f64 / frames as f64,
    );
    let se = (standard_error(a, frames).powi(2) + standard_error(b, frames).powi(2)).sqrt();
    assert!((a - b).abs() <= 3.0 * se, "random {a} vs all-zero {b}");
}

#[test]
fn ml_bound_never_exceeds_errors() {
    let mut cfg = SimConfig::new(
        RmCode::new(2, 5).unwrap(),
        DecoderSpec::SspRld { budget: 1, list: 2 },
    );
    cfg.ebn0_db = vec![-1.0, 1.0, 3.0];
    cfg.target_errors = 50;
    cfg.max_frames = 20_000;
    for rec in run_fer(&cfg).unwrap() {
        assert!(rec.ml_bound_errors <= rec.frame_errors);
        assert!((rec.fer - rec.frame_errors as f64 / rec.frames as f64).abs() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn outputs_are_codewords_for_any_llrs(
        llr in prop::collection::vec(-8.0f64..8.0, 32),
        seed in any::<u64>(),
        list in 1usize..6,
        budget in 0usize..4,
    ) {
        let code = RmCode::new(2, 5).unwrap();
        let dec = SpRldDecoder::new(code.clone(), SpConfig::ssp_rld(budget, list)).unwrap();
        let out = dec.decode(&llr, &mut stream(seed, &[]), &mut CostLedger::new()).unwrap();
        prop_assert!(code.is_codeword(&out.codeword));
        let aut = aut_ssc_fht_decode(&llr, &code, 3, &mut stream(seed, &[]), &mut CostLedger::new()).unwrap();
        prop_assert!(code.is_codeword(&aut.codeword));
    }

    #[test]
    fn reported_metric_is_the_disagreement_of_the_output(
        llr in prop::collection::vec(-8.0f64..8.0, 64),
        seed in any::<u64>(),
    ) {
        let code = RmCode::new(3, 6).unwrap();
        let dec = SpRldDecoder::new(code, SpConfig::sp_rld(4)).unwrap();
        let out = dec.decode(&llr, &mut stream(seed, &[]), &mut CostLedger::new()).unwrap();
        let total: f64 = llr.iter().map(|a| a.abs()).sum();
        let disagreement = 0.5 * (total - correlation(&out.codeword, &llr));
        prop_assert!(out.pm >= disagreement - 1e-9);
    }
}
