//! Certified intervals for the Shannon capacity `Θ(G)` and the zero-error
//! capacity `C0(W) = log2 Θ(G_W)`, and budgeted semi-decision procedures for
//! threshold questions about them.
//!
//! Every comparison is carried out on integers. The lower end of an
//! interval is `α(G^⊠k)^(1/k)` kept as the pair `(α, k)`; the upper end is
//! the clique cover number. Decimals appear only in display strings.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::channel::{confusability_graph, Channel};
use crate::exact_num::{format_rational, Rational, Verdict};
use crate::graph::{clique_cover_number, independence_number, strong_product, Graph, GraphError};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),
    #[error("threshold denominator {denominator} exceeds the supported maximum {max}")]
    NonDyadicThreshold { denominator: String, max: u32 },
}

/// Largest threshold denominator accepted by [`semidecide_c0_above`].
pub const MAX_THRESHOLD_DENOMINATOR: u32 = 1024;

/// `Θ(G) ∈ [lower_alpha^(1/lower_root), upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundInterval {
    /// `α(G^⊠lower_root)`, the best lower base found.
    pub lower_alpha: usize,
    /// Block length achieving the best lower bound (smallest on ties).
    pub lower_root: usize,
    /// Clique cover number of `G`.
    pub upper: usize,
    /// Number of strong powers evaluated.
    pub n_used: usize,
    /// `α(G^⊠k)` for `k = 1..=n_used`.
    pub alpha_values: Vec<usize>,
}

impl BoundInterval {
    /// `lower <= upper`, i.e. `lower_alpha <= upper^lower_root`.
    pub fn is_consistent(&self) -> bool {
        BigUint::from(self.lower_alpha)
            <= BigUint::from(self.upper).pow(self.lower_root as u32)
    }

    /// Both ends coincide, so `Θ` is known exactly.
    pub fn is_exact(&self) -> bool {
        BigUint::from(self.lower_alpha) == BigUint::from(self.upper).pow(self.lower_root as u32)
    }

    /// `Θ` when the interval has collapsed to a point.
    pub fn exact_theta(&self) -> Option<usize> {
        self.is_exact().then_some(self.upper)
    }

    /// `C0` in bits when the interval has collapsed onto a power of two.
    pub fn exact_c0_bits(&self) -> Option<u32> {
        let theta = self.exact_theta()?;
        theta.is_power_of_two().then(|| theta.trailing_zeros())
    }

    pub fn lower_theta(&self) -> f64 {
        (self.lower_alpha as f64).powf(1.0 / self.lower_root as f64)
    }

    pub fn upper_theta(&self) -> f64 {
        self.upper as f64
    }

    /// Symbolic lower end, e.g. `5^(1/2)`.
    pub fn lower_symbolic(&self) -> String {
        if self.lower_root == 1 {
            self.lower_alpha.to_string()
        } else {
            format!("{}^(1/{})", self.lower_alpha, self.lower_root)
        }
    }

    /// Approximate `[lower, upper]` for `Θ`, six decimals, display only.
    pub fn theta_display(&self) -> (String, String) {
        (
            format!("{:.6}", self.lower_theta()),
            format!("{:.6}", self.upper_theta()),
        )
    }

    /// Approximate `[lower, upper]` for `C0` in bits, display only.
    pub fn c0_display(&self) -> (String, String) {
        (
            format!("{:.6}", (self.lower_alpha as f64).log2() / self.lower_root as f64),
            format!("{:.6}", (self.upper as f64).log2()),
        )
    }
}

/// Index (0-based) of the best `α_k^(1/k)`; ties keep the smallest `k`.
fn best_root(alpha_values: &[usize]) -> usize {
    let mut best = 0;
    for k in 1..alpha_values.len() {
        // a_k^(1/(k+1)) > a_best^(1/(best+1))  <=>  a_k^(best+1) > a_best^(k+1)
        let candidate = BigUint::from(alpha_values[k]).pow(best as u32 + 1);
        let incumbent = BigUint::from(alpha_values[best]).pow(k as u32 + 1);
        if candidate > incumbent {
            best = k;
        }
    }
    best
}

/// `α(G^⊠k)` for `k = 1..=n_max`.
pub fn alpha_sequence(graph: &Graph, n_max: usize, limits: &Limits) -> Result<Vec<usize>, GraphError> {
    let mut power = graph.clone();
    let mut alphas = Vec::with_capacity(n_max);
    for k in 1..=n_max {
        if k > 1 {
            power = strong_product(&power, graph, limits)?;
        }
        alphas.push(independence_number(&power));
    }
    Ok(alphas)
}

pub fn theta_bounds(graph: &Graph, n_max: usize, limits: &Limits) -> Result<BoundInterval, BoundsError> {
    if n_max == 0 {
        return Err(BoundsError::InvalidThreshold("n_max must be at least 1".into()));
    }
    let upper = clique_cover_number(graph, limits)?;
    let alpha_values = alpha_sequence(graph, n_max, limits)?;
    let best = best_root(&alpha_values);
    Ok(BoundInterval {
        lower_alpha: alpha_values[best],
        lower_root: best + 1,
        upper,
        n_used: n_max,
        alpha_values,
    })
}

/// Bounds on `Θ(G_W)`; `C0(W)` is their base-2 logarithm.
pub fn c0_bounds(channel: &Channel, n_max: usize, limits: &Limits) -> Result<BoundInterval, BoundsError> {
    theta_bounds(&confusability_graph(channel), n_max, limits)
}

/// Verdict of a threshold search with the independence numbers it used, so
/// that a `Halted` answer can be re-checked offline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiDecision {
    pub verdict: Verdict,
    pub alpha_values: Vec<usize>,
}

/// Halts at the smallest `n <= budget_n` with `α(G^⊠n) > mu^n`; halting
/// certifies `Θ(G) > mu`.
pub fn semidecide_theta_above(
    graph: &Graph,
    mu: &Rational,
    budget_n: u64,
    limits: &Limits,
) -> Result<SemiDecision, BoundsError> {
    if *mu < Rational::one() {
        return Err(BoundsError::InvalidThreshold(format!(
            "mu = {} is below 1",
            format_rational(mu)
        )));
    }
    let (p, q) = (mu.numer().magnitude().clone(), mu.denom().magnitude().clone());
    search_powers(graph, budget_n, limits, |n, alpha| {
        // alpha > (p/q)^n  <=>  alpha * q^n > p^n
        BigUint::from(alpha) * q.pow(n) > p.pow(n)
    })
}

/// Halts at the smallest `n <= budget_n` with `α(G_W^⊠n) > 2^(λn)`; halting
/// certifies `C0(W) > λ`. With `λ = p/q` the test is `α^q > 2^(pn)`.
pub fn semidecide_c0_above(
    channel: &Channel,
    lambda: &Rational,
    budget_n: u64,
    limits: &Limits,
) -> Result<SemiDecision, BoundsError> {
    if lambda.is_negative() {
        return Err(BoundsError::InvalidThreshold(format!(
            "lambda = {} is negative",
            format_rational(lambda)
        )));
    }
    let denominator = lambda
        .denom()
        .to_u32()
        .filter(|&d| d <= MAX_THRESHOLD_DENOMINATOR)
        .ok_or_else(|| BoundsError::NonDyadicThreshold {
            denominator: lambda.denom().to_string(),
            max: MAX_THRESHOLD_DENOMINATOR,
        })?;
    let numerator = lambda.numer().to_u64().ok_or_else(|| {
        BoundsError::InvalidThreshold(format!("lambda = {} is too large", format_rational(lambda)))
    })?;
    let graph = confusability_graph(channel);
    search_powers(&graph, budget_n, limits, |n, alpha| {
        let exponent = numerator * n as u64;
        BigUint::from(alpha).pow(denominator) > BigUint::one() << exponent
    })
}

fn search_powers<F>(graph: &Graph, budget_n: u64, limits: &Limits, above: F) -> Result<SemiDecision, BoundsError>
where
    F: Fn(u32, usize) -> bool,
{
    if budget_n == 0 {
        return Err(BoundsError::InvalidThreshold("budget must be at least 1".into()));
    }
    let mut alpha_values = Vec::new();
    let mut power = graph.clone();
    for n in 1..=budget_n {
        if n > 1 {
            power = strong_product(&power, graph, limits)?;
        }
        let alpha = independence_number(&power);
        alpha_values.push(alpha);
        if above(n as u32, alpha) {
            return Ok(SemiDecision {
                verdict: Verdict::Halted { steps_used: n },
                alpha_values,
            });
        }
    }
    Ok(SemiDecision {
        verdict: Verdict::BudgetExhausted { budget: budget_n },
        alpha_values,
    })
}

/// Re-checks `α > mu^n` from a recorded independence number.
pub fn alpha_exceeds_power(alpha: usize, mu: &Rational, n: u32) -> bool {
    let scaled = BigInt::from(alpha) * mu.denom().pow(n);
    let bound = mu.numer().pow(n);
    scaled > bound
}

/// The integer `r` with `r^n = a`, if there is one.
pub fn integer_root(a: usize, n: usize) -> Option<usize> {
    let root = (a as f64).powf(1.0 / n as f64).round() as usize;
    (root.saturating_sub(1)..=root + 1).find(|&r| BigUint::from(r).pow(n as u32) == BigUint::from(a))
}
