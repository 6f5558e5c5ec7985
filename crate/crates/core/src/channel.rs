//! Discrete memoryless channels over exact rationals, their confusability
//! graphs, and zero-error code search.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_num::{
    format_rational, pow2_neg, sign_positive, ApproxReal, Provenance, Rational, ScaledRational,
    Verdict,
};
use crate::graph::{is_complete, maximum_independent_set, strong_power, Graph, GraphError};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChannelError {
    #[error("alphabets must have at least two letters, got {inputs} inputs and {outputs} outputs")]
    AlphabetTooSmall { inputs: usize, outputs: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) is outside [0, 1]")]
    EntryOutOfRange { row: usize, col: usize },
    #[error("row {row} sums to {}, not 1", format_rational(.sum))]
    NonStochasticRow { row: usize, sum: Rational },
    #[error("enumerating {words} words exceeds the cap of {cap}")]
    EnumerationCapExceeded { words: u128, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A DMC `W(y|x)`: a row-stochastic `|X| x |Y|` matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Channel {
    rows: Vec<Vec<Rational>>,
}

impl Channel {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, ChannelError> {
        validate_channel(rows)
    }

    /// The `size x size` noiseless channel.
    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|x| {
                (0..size)
                    .map(|y| if x == y { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Channel { rows }
    }

    pub fn input_size(&self) -> usize {
        self.rows.len()
    }

    pub fn output_size(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn entry(&self, x: usize, y: usize) -> &Rational {
        &self.rows[x][y]
    }

    /// Outputs reachable from input `x`.
    pub fn support(&self, x: usize) -> Vec<usize> {
        (0..self.output_size())
            .filter(|&y| self.rows[x][y].is_positive())
            .collect()
    }

    pub fn support_matrix(&self) -> Vec<Vec<bool>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(Signed::is_positive).collect())
            .collect()
    }
}

pub fn validate_channel(rows: Vec<Vec<Rational>>) -> Result<Channel, ChannelError> {
    let inputs = rows.len();
    let outputs = rows.first().map_or(0, Vec::len);
    if inputs < 2 || outputs < 2 {
        return Err(ChannelError::AlphabetTooSmall { inputs, outputs });
    }
    for (row, entries) in rows.iter().enumerate() {
        if entries.len() != outputs {
            return Err(ChannelError::RaggedRow {
                row,
                len: entries.len(),
                expected: outputs,
            });
        }
        if let Some(col) = entries
            .iter()
            .position(|p| p.is_negative() || *p > Rational::one())
        {
            return Err(ChannelError::EntryOutOfRange { row, col });
        }
        let sum: Rational = entries.iter().sum();
        if !sum.is_one() {
            return Err(ChannelError::NonStochasticRow { row, sum });
        }
    }
    Ok(Channel { rows })
}

/// Letters `x` and `x'` are adjacent iff some output is reachable from both.
pub fn confusability_graph(channel: &Channel) -> Graph {
    let support = channel.support_matrix();
    let n = channel.input_size();
    let mut graph = Graph::edgeless(n);
    for x in 0..n {
        for x2 in x + 1..n {
            if support[x].iter().zip(&support[x2]).any(|(&a, &b)| a && b) {
                graph.add_edge(x, x2);
            }
        }
    }
    graph
}

/// `C0(W) = 0` exactly when every two inputs can be confused.
pub fn is_useless(channel: &Channel) -> bool {
    is_complete(&confusability_graph(channel))
}

/// A channel whose entries are computable reals.
#[derive(Debug, Clone)]
pub struct ApproxChannel {
    rows: Vec<Vec<ApproxReal>>,
}

/// Precisions probed when an approximate channel is constructed.
const RANGE_PROBE: u64 = 8;

impl ApproxChannel {
    /// Checks the shape, and that every entry's approximants at the first
    /// few precisions stay within `[-2^-n, 1 + 2^-n]`.
    pub fn new(rows: Vec<Vec<ApproxReal>>) -> Result<Self, ChannelError> {
        let inputs = rows.len();
        let outputs = rows.first().map_or(0, Vec::len);
        if inputs < 2 || outputs < 2 {
            return Err(ChannelError::AlphabetTooSmall { inputs, outputs });
        }
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != outputs {
                return Err(ChannelError::RaggedRow {
                    row,
                    len: entries.len(),
                    expected: outputs,
                });
            }
            for (col, entry) in entries.iter().enumerate() {
                for n in 0..=RANGE_PROBE {
                    let value = entry.approximant(n);
                    let slack = pow2_neg(n);
                    if value < -slack.clone() || value > Rational::one() + slack {
                        return Err(ChannelError::EntryOutOfRange { row, col });
                    }
                }
            }
        }
        Ok(ApproxChannel { rows })
    }

    pub fn from_channel(channel: &Channel) -> Self {
        let rows = channel
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .cloned()
                    .map(crate::exact_num::real_from_rational)
                    .collect()
            })
            .collect();
        ApproxChannel { rows }
    }

    pub fn input_size(&self) -> usize {
        self.rows.len()
    }

    pub fn output_size(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, x: usize, y: usize) -> &ApproxReal {
        &self.rows[x][y]
    }

    /// `d(x, x') = sum_y W(y|x) W(y|x')` as a computable real.
    ///
    /// Factors are read at precision `n + ceil(log2(2|Y|)) + 1`: each product
    /// is then within `4 * 2^-p` of its limit, and `|Y|` of them stay within
    /// `2^-n`.
    pub fn overlap(&self, x: usize, x2: usize) -> ApproxReal {
        let left = self.rows[x].clone();
        let right = self.rows[x2].clone();
        if left
            .iter()
            .chain(&right)
            .all(|e| e.provenance() == Provenance::ExactRational)
        {
            let exact: Rational = left
                .iter()
                .zip(&right)
                .map(|(a, b)| a.approximant(0) * b.approximant(0))
                .sum();
            return crate::exact_num::real_from_rational(exact);
        }
        let extra = ceil_log2(2 * left.len() as u64) + 1;
        ApproxReal::from_fn(Provenance::Derived, move |n| {
            let p = n + extra;
            let sum: Rational = left
                .iter()
                .zip(&right)
                .map(|(a, b)| a.approximant(p) * b.approximant(p))
                .sum();
            ScaledRational::exact(sum)
        })
    }
}

fn ceil_log2(v: u64) -> u64 {
    assert!(v > 0);
    (64 - (v - 1).leading_zeros()) as u64
}

/// Graphs `G_1, ..., G_budget` revealing edges of the confusability graph of
/// an approximate channel: `{x, x'}` is in `G_k` once the positivity test on
/// `d(x, x')` has halted within `k` steps. The sequence is nested.
pub fn confusability_graph_staged(channel: &ApproxChannel, budget: u64) -> Vec<Graph> {
    assert!(budget >= 1, "budget must be at least 1");
    let n = channel.input_size();
    let mut reveals = Vec::new();
    for x in 0..n {
        for x2 in x + 1..n {
            if let Verdict::Halted { steps_used } = sign_positive(&channel.overlap(x, x2), budget) {
                reveals.push((steps_used, x, x2));
            }
        }
    }
    let mut stages = Vec::with_capacity(budget as usize);
    let mut graph = Graph::edgeless(n);
    for k in 1..=budget {
        for &(step, x, x2) in &reveals {
            if step == k {
                graph.add_edge(x, x2);
            }
        }
        stages.push(graph.clone());
    }
    stages
}

/// Pairwise orthogonal input words of a common block length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroErrorCode {
    pub block_length: usize,
    pub codewords: Vec<Vec<usize>>,
}

impl ZeroErrorCode {
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Two words are orthogonal iff some position holds letters with
    /// disjoint output supports.
    pub fn is_zero_error_for(&self, channel: &Channel) -> bool {
        let graph = confusability_graph(channel);
        let orthogonal = |a: &[usize], b: &[usize]| {
            a.iter()
                .zip(b)
                .any(|(&x, &x2)| x != x2 && !graph.has_edge(x, x2))
        };
        self.codewords.iter().all(|w| w.len() == self.block_length)
            && self.codewords.iter().enumerate().all(|(i, a)| {
                self.codewords[i + 1..].iter().all(|b| orthogonal(a, b))
            })
    }

    /// Concatenates every codeword of `self` with every codeword of `other`.
    pub fn concatenate(&self, other: &ZeroErrorCode) -> ZeroErrorCode {
        let codewords = self
            .codewords
            .iter()
            .flat_map(|a| {
                other.codewords.iter().map(move |b| {
                    let mut word = a.clone();
                    word.extend_from_slice(b);
                    word
                })
            })
            .collect();
        ZeroErrorCode {
            block_length: self.block_length + other.block_length,
            codewords,
        }
    }
}

/// Decodes a strong-power vertex index into its word (most significant
/// letter first).
pub fn word_of_index(mut index: usize, alphabet: usize, length: usize) -> Vec<usize> {
    let mut word = vec![0; length];
    for slot in word.iter_mut().rev() {
        *slot = index % alphabet;
        index /= alphabet;
    }
    word
}

/// A largest zero-error code of block length `n`, i.e. `M_*(W, n)` words.
///
/// Searched as a maximum independent set of the `n`-th strong power of the
/// confusability graph.
pub fn max_zero_error_code(
    channel: &Channel,
    n: usize,
    limits: &Limits,
) -> Result<ZeroErrorCode, ChannelError> {
    assert!(n >= 1, "block length must be at least 1");
    let alphabet = channel.input_size();
    let words = (alphabet as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if words > limits.enum_cap as u128 {
        return Err(ChannelError::EnumerationCapExceeded {
            words,
            cap: limits.enum_cap,
        });
    }
    let power = strong_power(&confusability_graph(channel), n, limits)?;
    let codewords = maximum_independent_set(&power)
        .into_iter()
        .map(|v| word_of_index(v, alphabet, n))
        .collect();
    Ok(ZeroErrorCode {
        block_length: n,
        codewords,
    })
}
