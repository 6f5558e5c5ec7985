mod common;

use proptest::prelude::*;

use common::{brute_clique_cover, exhaustive_alpha, exhaustive_alpha_transitive, subset_alpha};
use zerocap::graph::maximum_independent_set;
use zerocap::{clique_cover_number, independence_number, strong_power, strong_product, Graph, Limits};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

#[test]
fn pentagon_powers_match_oracle() {
    let limits = Limits::default();
    let c5 = Graph::cycle(5);
    assert_eq!(subset_alpha(&c5), 2);
    assert_eq!(independence_number(&c5), 2);
    let square = strong_power(&c5, 2, &limits).unwrap();
    assert_eq!(exhaustive_alpha(&square), 5);
    assert_eq!(independence_number(&square), 5);
}

#[test]
fn pentagon_cube_matches_oracle() {
    let cube = strong_power(&Graph::cycle(5), 3, &Limits::default()).unwrap();
    let alpha = independence_number(&cube);
    assert_eq!(alpha, exhaustive_alpha_transitive(&cube));
    assert_eq!(alpha, 10);
}

#[test]
fn heptagon_square() {
    let square = strong_power(&Graph::cycle(7), 2, &Limits::default()).unwrap();
    assert_eq!(independence_number(&square), exhaustive_alpha_transitive(&square));
}

#[test]
fn product_cap_is_enforced() {
    let limits = Limits {
        product_cap: 24,
        ..Limits::default()
    };
    assert!(strong_product(&Graph::cycle(5), &Graph::cycle(5), &limits).is_err());
    assert!(strong_product(&Graph::cycle(4), &Graph::cycle(6), &limits).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_matches_subset_oracle(g in graph_strategy(14)) {
        let set = maximum_independent_set(&g);
        prop_assert!(g.is_independent(&set));
        prop_assert_eq!(set.len(), subset_alpha(&g));
    }

    #[test]
    fn cover_matches_brute_force(g in graph_strategy(7)) {
        prop_assert_eq!(clique_cover_number(&g, &Limits::default()).unwrap(), brute_clique_cover(&g));
    }

    #[test]
    fn alpha_at_most_clique_cover(g in graph_strategy(12)) {
        prop_assert!(independence_number(&g) <= clique_cover_number(&g, &Limits::default()).unwrap());
    }

    #[test]
    fn alpha_super_multiplicative(g in graph_strategy(6), h in graph_strategy(6)) {
        let product = strong_product(&g, &h, &Limits::default()).unwrap();
        prop_assert!(independence_number(&product) >= independence_number(&g) * independence_number(&h));
    }

    #[test]
    fn strong_product_is_symmetric(g in graph_strategy(5), h in graph_strategy(5)) {
        let limits = Limits::default();
        let gh = strong_product(&g, &h, &limits).unwrap();
        let hg = strong_product(&h, &g, &limits).unwrap();
        let (ng, nh) = (g.vertex_count(), h.vertex_count());
        // (a, b) in G x H corresponds to (b, a) in H x G
        let swap = |v: usize| (v % nh) * ng + v / nh;
        for u in 0..ng * nh {
            for v in 0..ng * nh {
                prop_assert_eq!(gh.has_edge(u, v), hg.has_edge(swap(u), swap(v)));
            }
        }
    }

    #[test]
    fn complement_is_involutive(g in graph_strategy(10)) {
        prop_assert_eq!(g.complement().complement(), g);
    }
}
