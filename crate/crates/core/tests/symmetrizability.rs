mod common;

use common::{all_binary_state_subsets, exhaustive_binary_avcs, random_avc, rng};
use zerocap::avc::{is_symmetrizable_enum, is_symmetrizable_lp};

#[test]
fn deciders_agree_on_exhaustive_binary_corpus() {
    let corpus = exhaustive_binary_avcs();
    assert_eq!(corpus.len(), 10);
    for avc in corpus.iter().chain(&all_binary_state_subsets()) {
        let enumerated = is_symmetrizable_enum(avc, 16).unwrap();
        let lp = is_symmetrizable_lp(avc);
        assert_eq!(enumerated.is_some(), lp.is_some(), "{avc:?}");
        for witness in enumerated.iter().chain(&lp) {
            assert!(witness.verifies(avc));
        }
    }
}

#[test]
fn deciders_agree_on_random_corpus() {
    let mut rng = rng(0x5eed_0005);
    let mut positives = 0;
    for _ in 0..200 {
        let avc = random_avc(&mut rng, 3, 3, 4);
        let enumerated = is_symmetrizable_enum(&avc, 16).unwrap();
        let lp = is_symmetrizable_lp(&avc);
        assert_eq!(enumerated.is_some(), lp.is_some(), "{avc:?}");
        for witness in enumerated.iter().chain(&lp) {
            assert!(witness.verifies(&avc));
        }
        positives += lp.is_some() as usize;
    }
    // the corpus exercises both outcomes
    assert!(positives > 10 && positives < 190, "{positives}");
}

#[test]
fn deciders_agree_on_larger_random_corpus() {
    let mut rng = rng(0x5eed_0006);
    for _ in 0..300 {
        let avc = random_avc(&mut rng, 4, 4, 6);
        let enumerated = is_symmetrizable_enum(&avc, 16).unwrap();
        let lp = is_symmetrizable_lp(&avc);
        assert_eq!(enumerated.is_some(), lp.is_some(), "{avc:?}");
    }
}
