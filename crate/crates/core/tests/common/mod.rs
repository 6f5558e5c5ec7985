//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerocap::exact_num::rational;
use zerocap::{Channel, Graph, Rational, ZeroOneAvc};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w_delta(num: i64, den: i64) -> Channel {
    let d = rational(num, den);
    let c = rational(den - num, den);
    Channel::new(vec![vec![c.clone(), d.clone()], vec![d, c]]).unwrap()
}

pub fn pentagon() -> Channel {
    let rows = (0..5)
        .map(|x| {
            (0..5)
                .map(|y| if y == x || y == (x + 1) % 5 { rational(1, 2) } else { Rational::zero() })
                .collect()
        })
        .collect();
    Channel::new(rows).unwrap()
}

/// Random channel with a random zero pattern; every row keeps at least one
/// positive entry.
pub fn random_channel(rng: &mut impl Rng, max_in: usize, max_out: usize) -> Channel {
    let nx = rng.gen_range(2..=max_in);
    let ny = rng.gen_range(2..=max_out);
    let rows = (0..nx)
        .map(|_| {
            let mut weights: Vec<i64> = (0..ny)
                .map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..6) } else { 0 })
                .collect();
            if weights.iter().all(|&w| w == 0) {
                let y = rng.gen_range(0..ny);
                weights[y] = 1;
            }
            let total: i64 = weights.iter().sum();
            weights.into_iter().map(|w| rational(w, total)).collect()
        })
        .collect();
    Channel::new(rows).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn random_avc(rng: &mut impl Rng, max_in: usize, max_out: usize, max_states: usize) -> ZeroOneAvc {
    let nx = rng.gen_range(2..=max_in);
    let ny = rng.gen_range(2..=max_out);
    let ns = rng.gen_range(1..=max_states);
    let states = (0..ns).map(|_| (0..nx).map(|_| rng.gen_range(0..ny)).collect()).collect();
    ZeroOneAvc::new(nx, ny, states).unwrap()
}

/// Every 0-1 AVC with |X| = |Y| = 2 and one or two distinct states
/// (4 single-state and 6 two-state families).
pub fn exhaustive_binary_avcs() -> Vec<ZeroOneAvc> {
    let maps: Vec<Vec<usize>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    let mut out = Vec::new();
    for map in &maps {
        out.push(ZeroOneAvc::new(2, 2, vec![map.clone()]).unwrap());
    }
    for a in 0..4 {
        for b in a + 1..4 {
            out.push(ZeroOneAvc::new(2, 2, vec![maps[a].clone(), maps[b].clone()]).unwrap());
        }
    }
    out
}

/// Every 0-1 AVC with |X| = |Y| = 2 over every non-empty subset of the four
/// deterministic maps.
pub fn all_binary_state_subsets() -> Vec<ZeroOneAvc> {
    let maps: Vec<Vec<usize>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    (1u32..16)
        .map(|mask| {
            let states = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| maps[i].clone()).collect();
            ZeroOneAvc::new(2, 2, states).unwrap()
        })
        .collect()
}

/// α by exhaustive include/exclude search with only the trivial
/// "remaining candidates" bound.
pub fn exhaustive_alpha(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    let adjacency: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| graph.has_edge(u, v)).collect()).collect();
    fn walk(adj: &[Vec<bool>], candidates: Vec<usize>, size: usize, best: &mut usize) {
        if size + candidates.len() <= *best {
            return;
        }
        let Some((&v, rest)) = candidates.split_first() else {
            *best = (*best).max(size);
            return;
        };
        let kept: Vec<usize> = rest.iter().copied().filter(|&w| !adj[v][w]).collect();
        walk(adj, kept, size + 1, best);
        walk(adj, rest.to_vec(), size, best);
    }
    let mut best = 0;
    walk(&adjacency, (0..n).collect(), 0, &mut best);
    best
}

/// [`exhaustive_alpha`] for vertex-transitive graphs: some maximum
/// independent set contains vertex 0, so it is forced in.
pub fn exhaustive_alpha_transitive(graph: &Graph) -> usize {
    let rest: Vec<usize> = (1..graph.vertex_count()).filter(|&v| !graph.has_edge(0, v)).collect();
    let edges: Vec<(usize, usize)> = rest
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| rest[i + 1..].iter().enumerate().map(move |(j, &v)| (i, i + 1 + j, u, v)))
        .filter(|&(_, _, u, v)| graph.has_edge(u, v))
        .map(|(i, j, _, _)| (i, j))
        .collect();
    if rest.is_empty() {
        return 1;
    }
    1 + exhaustive_alpha(&Graph::new(rest.len(), &edges).unwrap())
}

/// α by scanning every vertex subset, for small graphs.
pub fn subset_alpha(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|u| mask >> u & 1 == 0 || (u + 1..n).all(|v| mask >> v & 1 == 0 || !graph.has_edge(u, v)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap()
}

/// Minimum clique cover by trying every assignment of vertices to `k`
/// classes, for small graphs.
pub fn brute_clique_cover(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    for k in 1..=n {
        let mut labels = vec![0usize; n];
        loop {
            let ok = (0..n).all(|u| (u + 1..n).all(|v| labels[u] != labels[v] || graph.has_edge(u, v)));
            if ok {
                return k;
            }
            let mut i = 0;
            while i < n {
                labels[i] += 1;
                if labels[i] < k {
                    break;
                }
                labels[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

/// Largest set of pairwise orthogonal length-`n` input words, where two
/// words are orthogonal iff no output word has positive probability under
/// both (checked over every output word).
pub fn direct_code_size(channel: &Channel, n: usize) -> usize {
    let (nx, ny) = (channel.input_size(), channel.output_size());
    let words: Vec<Vec<usize>> = all_words(nx, n);
    let outputs: Vec<Vec<usize>> = all_words(ny, n);
    let reach = |word: &[usize], out: &[usize]| -> bool {
        // W^n(out | word) > 0
        let mut prob = Rational::from_integer(BigInt::from(1));
        for (&x, &y) in word.iter().zip(out) {
            prob *= channel.entry(x, y);
        }
        prob.is_positive()
    };
    let m = words.len();
    let mut orthogonal = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let clash = outputs.iter().any(|o| reach(&words[i], o) && reach(&words[j], o));
            orthogonal[i][j] = !clash;
            orthogonal[j][i] = !clash;
        }
    }
    fn grow(orth: &[Vec<bool>], chosen: &mut Vec<usize>, start: usize, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for w in start..orth.len() {
            if chosen.len() + (orth.len() - w) <= *best {
                return;
            }
            if chosen.iter().all(|&c| orth[c][w]) {
                chosen.push(w);
                grow(orth, chosen, w + 1, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(&orthogonal, &mut Vec::new(), 0, &mut best);
    best
}

pub fn all_words(alphabet: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |a| {
                    let mut next = w.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}
