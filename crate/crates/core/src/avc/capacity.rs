//! DMC capacity by Blahut-Arimoto iteration with certified brackets.
//!
//! For an input law `p` with output law `q = pW` and divergences
//! `D_x = D(W(.|x) || q)`, the capacity satisfies
//! `log2 sum_x p_x 2^{D_x} <= C <= max_x D_x`. Both ends are reported and
//! iteration stops once they are within the requested tolerance.

use serde::Serialize;
use thiserror::Error;

use crate::channel::Channel;
use crate::exact_num::to_f64;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CapacityError {
    #[error("tolerance {0} must be positive")]
    InvalidTolerance(f64),
    #[error("bracket width {width:e} still above tolerance after {max_iterations} iterations")]
    ToleranceNotReached { max_iterations: usize, width: f64 },
}

/// A capacity value in bits with its error envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityEstimate {
    pub value_bits: f64,
    pub lower_bits: f64,
    pub upper_bits: f64,
    /// `|value - true capacity|` is at most this when `certified` holds;
    /// otherwise it is a heuristic gap estimate.
    pub certified_absolute_error: f64,
    pub certified: bool,
    pub iterations: usize,
}

impl CapacityEstimate {
    pub fn exact(value_bits: f64) -> Self {
        CapacityEstimate {
            value_bits,
            lower_bits: value_bits,
            upper_bits: value_bits,
            certified_absolute_error: 0.0,
            certified: true,
            iterations: 0,
        }
    }

    pub(crate) fn from_bracket(lower: f64, upper: f64, iterations: usize) -> Self {
        let lower = lower.max(0.0);
        let upper = upper.max(lower);
        CapacityEstimate {
            value_bits: 0.5 * (lower + upper),
            lower_bits: lower,
            upper_bits: upper,
            certified_absolute_error: 0.5 * (upper - lower),
            certified: true,
            iterations,
        }
    }
}

/// Transition matrix in floating point, rows indexed by input.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub rows: Vec<Vec<f64>>,
}

impl Transition {
    pub fn from_channel(channel: &Channel) -> Self {
        Transition {
            rows: channel
                .rows()
                .iter()
                .map(|row| row.iter().map(to_f64).collect())
                .collect(),
        }
    }
}

/// One lower/upper pair per iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketTrace {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// Capacity of `channel` within `tol` bits.
pub fn dmc_capacity(channel: &Channel, tol: f64) -> Result<CapacityEstimate, CapacityError> {
    capacity_of(&Transition::from_channel(channel), tol, DEFAULT_MAX_ITERATIONS)
}

pub fn capacity_of(w: &Transition, tol: f64, max_iterations: usize) -> Result<CapacityEstimate, CapacityError> {
    blahut_arimoto(w, tol, max_iterations, None)
}

/// Like [`capacity_of`] but also records every bracket.
pub fn capacity_with_trace(
    w: &Transition,
    tol: f64,
    max_iterations: usize,
) -> (Result<CapacityEstimate, CapacityError>, BracketTrace) {
    let mut trace = BracketTrace {
        lower: Vec::new(),
        upper: Vec::new(),
    };
    let result = blahut_arimoto(w, tol, max_iterations, Some(&mut trace));
    (result, trace)
}

fn blahut_arimoto(
    w: &Transition,
    tol: f64,
    max_iterations: usize,
    mut trace: Option<&mut BracketTrace>,
) -> Result<CapacityEstimate, CapacityError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CapacityError::InvalidTolerance(tol));
    }
    let nx = w.rows.len();
    let ny = w.rows[0].len();
    let mut p = vec![1.0 / nx as f64; nx];
    let mut q = vec![0.0; ny];
    let mut divergence = vec![0.0; nx];
    let mut best_lower = f64::NEG_INFINITY;
    let mut best_upper = f64::INFINITY;
    for iteration in 1..=max_iterations {
        q.iter_mut().for_each(|v| *v = 0.0);
        for (px, row) in p.iter().zip(&w.rows) {
            for (qy, wy) in q.iter_mut().zip(row) {
                *qy += px * wy;
            }
        }
        for (d, row) in divergence.iter_mut().zip(&w.rows) {
            *d = row
                .iter()
                .zip(&q)
                .filter(|(&wy, _)| wy > 0.0)
                .map(|(&wy, &qy)| wy * (wy / qy).log2())
                .sum();
        }
        let upper = divergence.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let shift = upper;
        let z: f64 = p
            .iter()
            .zip(&divergence)
            .map(|(px, d)| px * (d - shift).exp2())
            .sum();
        let lower = shift + z.log2();
        best_lower = best_lower.max(lower);
        best_upper = best_upper.min(upper);
        if let Some(t) = trace.as_deref_mut() {
            t.lower.push(lower);
            t.upper.push(upper);
        }
        if best_upper - best_lower <= tol {
            return Ok(CapacityEstimate::from_bracket(best_lower, best_upper, iteration));
        }
        for (px, d) in p.iter_mut().zip(&divergence) {
            *px *= (d - shift).exp2() / z;
        }
    }
    Err(CapacityError::ToleranceNotReached {
        max_iterations,
        width: best_upper - best_lower,
    })
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |v: f64| if v > 0.0 { -v * v.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}
