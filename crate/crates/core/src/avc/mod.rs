//! Average-error capacity of 0-1 AVCs.
//!
//! A symmetrizable AVC has `C_av = 0`. Otherwise
//! `C_av = min_q C(W_q)` with `W_q = sum_s q(s) W(.|., s)`; capacity is
//! convex in the channel and `W_q` is linear in `q`, so the objective is
//! convex on the simplex.

pub mod capacity;
pub mod convex;
pub mod lp;
pub mod symmetrize;

use log::warn;
use thiserror::Error;

use crate::ahlswede::ZeroOneAvc;
use crate::limits::Limits;
use capacity::{capacity_of, CapacityError, CapacityEstimate, Transition, DEFAULT_MAX_ITERATIONS};
use convex::{minimize_convex_unit, projected_subgradient, Bracket, MinimizeError, Minimum};
pub use symmetrize::{is_symmetrizable_enum, is_symmetrizable_lp, SymmetrizeError, Symmetrizer};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CavError {
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("minimization gap {gap:e} above tolerance {tol:e}")]
    ToleranceNotReached { gap: f64, tol: f64 },
}

/// Weights `q` on the states of an AVC.
#[derive(Debug, Clone, PartialEq)]
pub struct StateMixture {
    pub weights: Vec<f64>,
}

/// `W_q(y|x) = sum_s q(s) [σ_s(x) = y]`.
pub fn mixture_channel(avc: &ZeroOneAvc, q: &[f64]) -> Transition {
    let mut rows = vec![vec![0.0; avc.output_size()]; avc.input_size()];
    for (s, &weight) in q.iter().enumerate() {
        for (x, row) in rows.iter_mut().enumerate() {
            row[avc.output(s, x)] += weight;
        }
    }
    Transition { rows }
}

/// Both symmetrizability deciders; the LP answer is authoritative.
pub fn symmetrizer(avc: &ZeroOneAvc, limits: &Limits) -> Option<Symmetrizer> {
    let lp = is_symmetrizable_lp(avc);
    match is_symmetrizable_enum(avc, limits.symmetrizer_enum_states) {
        Ok(enumerated) if enumerated.is_some() != lp.is_some() => {
            warn!(
                "symmetrizability deciders disagree (enumeration: {}, LP: {}); using LP",
                enumerated.is_some(),
                lp.is_some()
            );
        }
        Ok(_) | Err(SymmetrizeError::StateSetTooLargeForEnum { .. }) => {}
    }
    lp
}

/// Result of [`cav`] together with the minimizer found.
#[derive(Debug, Clone, PartialEq)]
pub struct CavResult {
    pub estimate: CapacityEstimate,
    pub symmetrizable: bool,
    /// Minimizing mixture over the distinct states (indices of first
    /// occurrences), absent when symmetrizable.
    pub minimizer: Option<StateMixture>,
}

/// Average-error capacity in bits.
///
/// Up to three distinct states the minimum over the simplex is certified
/// to `tol` by nested golden-section search with convexity bounds; beyond
/// that a projected subgradient run reports an uncertified gap estimate.
pub fn cav(avc: &ZeroOneAvc, tol: f64, limits: &Limits) -> Result<CavResult, CavError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CapacityError::InvalidTolerance(tol).into());
    }
    if symmetrizer(avc, limits).is_some() {
        return Ok(CavResult {
            estimate: CapacityEstimate::exact(0.0),
            symmetrizable: true,
            minimizer: None,
        });
    }
    let mut distinct: Vec<usize> = Vec::new();
    for s in 0..avc.state_count() {
        if !distinct.iter().any(|&t| avc.states()[t] == avc.states()[s]) {
            distinct.push(s);
        }
    }
    let reduced = ZeroOneAvc::new(
        avc.input_size(),
        avc.output_size(),
        distinct.iter().map(|&s| avc.states()[s].clone()).collect(),
    )
    .expect("subset of a valid AVC");
    let (estimate, weights) = match distinct.len() {
        1 => {
            let est = capacity_of(&mixture_channel(&reduced, &[1.0]), tol, DEFAULT_MAX_ITERATIONS)?;
            (est, vec![1.0])
        }
        2 | 3 => certified_minimum(&reduced, tol)?,
        k => uncertified_minimum(&reduced, k, tol)?,
    };
    let mut full = vec![0.0; avc.state_count()];
    for (&s, w) in distinct.iter().zip(weights) {
        full[s] = w;
    }
    Ok(CavResult {
        estimate,
        symmetrizable: false,
        minimizer: Some(StateMixture { weights: full }),
    })
}

fn capacity_bracket(avc: &ZeroOneAvc, q: &[f64], tol: f64, evaluations: &mut usize) -> Result<Bracket, CapacityError> {
    *evaluations += 1;
    let est = capacity_of(&mixture_channel(avc, q), tol, DEFAULT_MAX_ITERATIONS)?;
    Ok(Bracket {
        lower: est.lower_bits,
        upper: est.upper_bits,
    })
}

fn lift<E>(err: MinimizeError<E>, tol: f64) -> CavError
where
    CavError: From<E>,
{
    match err {
        MinimizeError::Evaluation(e) => e.into(),
        MinimizeError::GapNotClosed(Minimum { value, .. }) => CavError::ToleranceNotReached {
            gap: value.width(),
            tol,
        },
    }
}

fn certified_minimum(avc: &ZeroOneAvc, tol: f64) -> Result<(CapacityEstimate, Vec<f64>), CavError> {
    let mut evaluations = 0usize;
    let (min, weights) = if avc.state_count() == 2 {
        let inner_tol = tol / 16.0;
        let min = minimize_convex_unit(
            |t| capacity_bracket(avc, &[t, 1.0 - t], inner_tol, &mut evaluations),
            tol,
            0.0,
        )
        .map_err(|e| lift(e, tol))?;
        let t = min.argmin;
        (min, vec![t, 1.0 - t])
    } else {
        // q = (t, (1-t) u, (1-t)(1-u)); the fiber minimum over u is convex in t
        let (mid_tol, inner_tol) = (tol / 16.0, tol / 256.0);
        let mut best_inner = std::collections::HashMap::new();
        let min = minimize_convex_unit(
            |t| {
                let fiber = minimize_convex_unit(
                    |u| {
                        capacity_bracket(
                            avc,
                            &[t, (1.0 - t) * u, (1.0 - t) * (1.0 - u)],
                            inner_tol,
                            &mut evaluations,
                        )
                    },
                    mid_tol,
                    0.0,
                )
                .map_err(|e| lift(e, mid_tol))?;
                best_inner.insert(t.to_bits(), fiber.argmin);
                Ok::<_, CavError>(fiber.value)
            },
            tol,
            0.0,
        )
        .map_err(|e| match e {
            MinimizeError::Evaluation(inner) => inner,
            MinimizeError::GapNotClosed(state) => CavError::ToleranceNotReached {
                gap: state.value.width(),
                tol,
            },
        })?;
        let t = min.argmin;
        let u = best_inner[&t.to_bits()];
        (min, vec![t, (1.0 - t) * u, (1.0 - t) * (1.0 - u)])
    };
    let mut estimate = CapacityEstimate::from_bracket(min.value.lower, min.value.upper, evaluations);
    estimate.certified = true;
    Ok((estimate, weights))
}

const SUBGRADIENT_ITERATIONS: usize = 400;

fn uncertified_minimum(avc: &ZeroOneAvc, dim: usize, tol: f64) -> Result<(CapacityEstimate, Vec<f64>), CavError> {
    let inner_tol = tol / 2.0;
    let mut failure = None;
    let run = projected_subgradient(
        |q| match capacity_of(&mixture_channel(avc, q), inner_tol, DEFAULT_MAX_ITERATIONS) {
            Ok(est) => est.value_bits,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        dim,
        SUBGRADIENT_ITERATIONS,
        0.25,
    );
    if let Some(e) = failure {
        return Err(e.into());
    }
    let value = run.value.max(0.0);
    let estimate = CapacityEstimate {
        value_bits: value,
        lower_bits: (value - run.gap_estimate).max(0.0),
        upper_bits: value,
        certified_absolute_error: run.gap_estimate + inner_tol,
        certified: false,
        iterations: run.iterations,
    };
    Ok((estimate, run.point))
}
