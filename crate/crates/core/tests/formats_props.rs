mod common;

use proptest::prelude::*;

use common::{random_avc, random_channel, random_graph};
use zerocap::formats::{parse_avc, parse_channel, parse_graph, write_avc, write_channel, write_graph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let channel = random_channel(&mut rng, 5, 5);
        let text = write_channel(&channel);
        prop_assert_eq!(&parse_channel(&text).unwrap(), &channel);
        prop_assert_eq!(write_channel(&parse_channel(&text).unwrap()), text.clone());
        // whitespace is not significant
        let compact: String = text.split_whitespace().collect();
        prop_assert_eq!(write_channel(&parse_channel(&compact).unwrap()), text);

        let graph = random_graph(&mut rng, 7, 0.4);
        let text = write_graph(&graph);
        prop_assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);

        let avc = random_avc(&mut rng, 4, 4, 5);
        let text = write_avc(&avc);
        prop_assert_eq!(write_avc(&parse_avc(&text).unwrap()), text);
    }
}

#[test]
fn rationals_are_canonicalized() {
    let text = r#"{"input_size": 2, "output_size": 2, "rows": [["2/4", " 1/2"], ["0/7", "3/3"]]}"#;
    let written = write_channel(&parse_channel(text).unwrap());
    assert!(written.contains("\"1/2\""));
    assert!(written.contains("\"0\""));
    assert!(written.contains("\"1\""));
    assert!(!written.contains("2/4"));
}
