//! Constructions linking DMCs, graphs and 0-1 arbitrarily varying channels.
//!
//! A 0-1 AVC is a finite family of deterministic channels; state `s` is the
//! map `x -> σ_s(x)`. Converting a DMC into the family of all deterministic
//! maps inside its support, and back by uniform mixing, preserves the
//! support pattern and hence the confusability graph.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::channel::{validate_channel, Channel, ChannelError};
use crate::exact_num::Rational;
use crate::graph::Graph;
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AvcError {
    #[error("alphabets must have at least two letters, got {inputs} inputs and {outputs} outputs")]
    AlphabetTooSmall { inputs: usize, outputs: usize },
    #[error("an AVC needs at least one state")]
    NoStates,
    #[error("state {state} maps {len} inputs, expected {expected}")]
    StateLengthMismatch {
        state: usize,
        len: usize,
        expected: usize,
    },
    #[error("state {state} sends input {input} to output {output}, outside the output alphabet")]
    OutputOutOfRange {
        state: usize,
        input: usize,
        output: usize,
    },
    #[error("the channel induces {states} deterministic states, cap is {cap}")]
    StateCapExceeded { states: u128, cap: usize },
}

/// A family of deterministic channels, each stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneAvc {
    input_size: usize,
    output_size: usize,
    states: Vec<Vec<usize>>,
}

impl ZeroOneAvc {
    pub fn new(input_size: usize, output_size: usize, states: Vec<Vec<usize>>) -> Result<Self, AvcError> {
        if input_size < 2 || output_size < 2 {
            return Err(AvcError::AlphabetTooSmall {
                inputs: input_size,
                outputs: output_size,
            });
        }
        if states.is_empty() {
            return Err(AvcError::NoStates);
        }
        for (state, image) in states.iter().enumerate() {
            if image.len() != input_size {
                return Err(AvcError::StateLengthMismatch {
                    state,
                    len: image.len(),
                    expected: input_size,
                });
            }
            if let Some((input, &output)) = image.iter().enumerate().find(|(_, &y)| y >= output_size) {
                return Err(AvcError::OutputOutOfRange { state, input, output });
            }
        }
        Ok(ZeroOneAvc {
            input_size,
            output_size,
            states,
        })
    }

    pub fn input_size(&self) -> usize {
        self.input_size
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    /// `σ_s(x)`.
    pub fn output(&self, state: usize, input: usize) -> usize {
        self.states[state][input]
    }

    /// Pairs `(first, later)` of state indices with identical maps.
    pub fn duplicate_states(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for later in 0..self.states.len() {
            if let Some(first) = (0..later).find(|&s| self.states[s] == self.states[later]) {
                out.push((first, later));
            }
        }
        out
    }

    /// `M(x)`: outputs some state sends `x` to.
    pub fn reachable_outputs(&self, input: usize) -> BTreeSet<usize> {
        self.states.iter().map(|image| image[input]).collect()
    }
}

/// All deterministic maps `σ` with `W(σ(x)|x) > 0` for every `x`, in
/// lexicographic order of their image vectors.
pub fn dmc_to_avc(channel: &Channel, limits: &Limits) -> Result<ZeroOneAvc, AvcError> {
    let supports: Vec<Vec<usize>> = (0..channel.input_size()).map(|x| channel.support(x)).collect();
    let count = supports
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
        .unwrap_or(u128::MAX);
    if count > limits.state_cap as u128 {
        return Err(AvcError::StateCapExceeded {
            states: count,
            cap: limits.state_cap,
        });
    }
    let mut states = Vec::with_capacity(count as usize);
    let mut choice = vec![0usize; supports.len()];
    loop {
        states.push(choice.iter().zip(&supports).map(|(&i, s)| s[i]).collect());
        // odometer, last input varies fastest
        let mut pos = supports.len();
        loop {
            if pos == 0 {
                return ZeroOneAvc::new(channel.input_size(), channel.output_size(), states);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < supports[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Uniform mixture of the states: `W*(y|x) = |{s : σ_s(x) = y}| / |S|`.
pub fn avc_to_dmc(avc: &ZeroOneAvc) -> Channel {
    let total = BigInt::from(avc.state_count());
    let mut counts = vec![vec![0usize; avc.output_size()]; avc.input_size()];
    for image in avc.states() {
        for (x, &y) in image.iter().enumerate() {
            counts[x][y] += 1;
        }
    }
    let rows = counts
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| Rational::new(BigInt::from(c), total.clone()))
                .collect()
        })
        .collect();
    validate_channel(rows).expect("uniform state mixtures are row-stochastic")
}

/// The channel whose outputs are the vertices and edges of `graph`; input
/// `v` is sent uniformly to `{v}` and to every edge incident to it.
///
/// Outputs are ordered singletons first (by vertex), then edges sorted
/// lexicographically.
pub fn graph_to_channel(graph: &Graph) -> Result<Channel, ChannelError> {
    let n = graph.vertex_count();
    let edges = graph.edges();
    let outputs = n + edges.len();
    let mut rows = vec![vec![Rational::zero(); outputs]; n];
    for (v, row) in rows.iter_mut().enumerate() {
        let share = Rational::new(BigInt::from(1), BigInt::from(1 + graph.degree(v)));
        row[v] = share.clone();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a == v || b == v {
                row[n + i] = share.clone();
            }
        }
    }
    validate_channel(rows)
}

/// `C_max = 0` iff every two inputs have intersecting reachable sets.
pub fn cmax_is_zero(avc: &ZeroOneAvc) -> bool {
    let reach: Vec<BTreeSet<usize>> = (0..avc.input_size()).map(|x| avc.reachable_outputs(x)).collect();
    reach
        .iter()
        .enumerate()
        .all(|(i, a)| reach[i + 1..].iter().all(|b| !a.is_disjoint(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{confusability_graph, is_useless};
    use crate::exact_num::rational;
    use num_traits::One;

    fn w_delta() -> Channel {
        Channel::new(vec![
            vec![rational(3, 4), rational(1, 4)],
            vec![rational(1, 4), rational(3, 4)],
        ])
        .unwrap()
    }

    fn pentagon() -> Channel {
        let rows = (0..5)
            .map(|x| {
                (0..5)
                    .map(|y| if y == x || y == (x + 1) % 5 { rational(1, 2) } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Channel::new(rows).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(
            ZeroOneAvc::new(1, 2, vec![vec![0]]),
            Err(AvcError::AlphabetTooSmall { inputs: 1, outputs: 2 })
        );
        assert_eq!(ZeroOneAvc::new(2, 2, vec![]), Err(AvcError::NoStates));
        assert_eq!(
            ZeroOneAvc::new(2, 2, vec![vec![0]]),
            Err(AvcError::StateLengthMismatch { state: 0, len: 1, expected: 2 })
        );
        assert_eq!(
            ZeroOneAvc::new(2, 2, vec![vec![0, 2]]),
            Err(AvcError::OutputOutOfRange { state: 0, input: 1, output: 2 })
        );
        let dup = ZeroOneAvc::new(2, 2, vec![vec![0, 1], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(dup.duplicate_states(), vec![(0, 2)]);
    }

    #[test]
    fn dmc_to_avc_examples() {
        let limits = Limits::default();
        let avc = dmc_to_avc(&Channel::identity(2), &limits).unwrap();
        assert_eq!(avc.states(), &[vec![0, 1]]);
        let avc = dmc_to_avc(&w_delta(), &limits).unwrap();
        assert_eq!(avc.states(), &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(dmc_to_avc(&pentagon(), &limits).unwrap().state_count(), 32);
        let tight = Limits { state_cap: 31, ..Limits::default() };
        assert_eq!(
            dmc_to_avc(&pentagon(), &tight),
            Err(AvcError::StateCapExceeded { states: 32, cap: 31 })
        );
    }

    #[test]
    fn avc_to_dmc_examples() {
        let single = ZeroOneAvc::new(2, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(avc_to_dmc(&single), Channel::identity(2));
        let swap = ZeroOneAvc::new(2, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let half = rational(1, 2);
        assert!(avc_to_dmc(&swap).rows().iter().flatten().all(|p| *p == half));
        let full = avc_to_dmc(&dmc_to_avc(&w_delta(), &Limits::default()).unwrap());
        assert!(full.rows().iter().flatten().all(|p| *p == half));
    }

    #[test]
    fn graph_to_channel_examples() {
        assert_eq!(graph_to_channel(&Graph::edgeless(3)).unwrap(), Channel::identity(3));
        let k2 = graph_to_channel(&Graph::complete(2)).unwrap();
        let (h, z) = (rational(1, 2), Rational::zero());
        assert_eq!(k2.rows(), &[vec![h.clone(), z.clone(), h.clone()], vec![z, h.clone(), h]]);
        let c5 = graph_to_channel(&Graph::cycle(5)).unwrap();
        assert_eq!((c5.input_size(), c5.output_size()), (5, 10));
        let third = rational(1, 3);
        for row in c5.rows() {
            assert_eq!(row.iter().filter(|p| **p == third).count(), 3);
            assert_eq!(row.iter().filter(|p| p.is_zero()).count(), 7);
        }
        assert_eq!(confusability_graph(&c5), Graph::cycle(5));
        assert!(graph_to_channel(&Graph::edgeless(1)).is_err());
    }

    #[test]
    fn cmax_examples() {
        let single = ZeroOneAvc::new(2, 2, vec![vec![0, 1]]).unwrap();
        assert!(!cmax_is_zero(&single));
        let swap = ZeroOneAvc::new(2, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(cmax_is_zero(&swap));
        assert!(cmax_is_zero(&dmc_to_avc(&w_delta(), &Limits::default()).unwrap()));
        assert_eq!(cmax_is_zero(&swap), is_useless(&avc_to_dmc(&swap)));
        assert!(avc_to_dmc(&single).rows()[0][0].is_one());
    }
}
