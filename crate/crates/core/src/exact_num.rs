//! Exact rational scalars, computable reals given by effective approximation
//! sequences, and budgeted sign semi-deciders.
//!
//! A computable real is represented here by a deterministic function
//! `n -> r_n` with the contract `|x - r_n| <= 2^-n`. The sign deciders scan
//! the precision index `k = 1, 2, ...` and stop on the first certified
//! inequality; they can never stop on an exact zero, which is the behavioral
//! face of the missing equality test.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision exact fraction, always kept in canonical form.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    InvalidInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or `"p"` into a canonical rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |s: &str| {
        BigInt::from_str(s.trim()).map_err(|_| ParseRationalError::InvalidInteger(s.to_string()))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(text.to_string()));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Serializes a rational as `"p/q"`, or `"p"` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `2^-n` as an exact rational.
pub fn pow2_neg(n: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n)
}

/// Lossy conversion used only for display and numeric routines.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// Value `mantissa * 2^exp2`.
///
/// Approximants are produced in this form so that dyadic scales such as
/// `2^-1000000` never have to be materialized during sign tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRational {
    pub mantissa: Rational,
    pub exp2: i64,
}

impl ScaledRational {
    pub fn exact(value: Rational) -> Self {
        ScaledRational {
            mantissa: value,
            exp2: 0,
        }
    }

    /// `2^-n`.
    pub fn pow2_neg(n: u64) -> Self {
        ScaledRational {
            mantissa: Rational::one(),
            exp2: -(n as i64),
        }
    }

    pub fn to_rational(&self) -> Rational {
        let shift = self.exp2.unsigned_abs();
        if self.exp2 >= 0 {
            &self.mantissa * Rational::from_integer(BigInt::one() << shift)
        } else {
            &self.mantissa / Rational::from_integer(BigInt::one() << shift)
        }
    }

    fn neg(&self) -> Self {
        ScaledRational {
            mantissa: -self.mantissa.clone(),
            exp2: self.exp2,
        }
    }

    /// Decides `self > 2^-k` exactly.
    fn exceeds_pow2_neg(&self, k: u64) -> bool {
        if !self.mantissa.is_positive() {
            return false;
        }
        // p/q * 2^e > 2^-k  <=>  p * 2^(e+k) > q
        let p = self.mantissa.numer();
        let q = self.mantissa.denom();
        let t = self.exp2 as i128 + k as i128;
        let lhs_bits = p.bits() as i128 + t;
        let rhs_bits = q.bits() as i128;
        if lhs_bits > rhs_bits + 1 {
            return true;
        }
        if lhs_bits < rhs_bits - 1 {
            return false;
        }
        if t >= 0 {
            (p << (t as u64)) > *q
        } else {
            *p > (q << ((-t) as u64))
        }
    }
}

impl From<Rational> for ScaledRational {
    fn from(value: Rational) -> Self {
        ScaledRational::exact(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ExactRational,
    SpeckerSequence,
    Derived,
}

type ApproximantFn = dyn Fn(u64) -> ScaledRational + Send + Sync;

/// A computable real: a deterministic approximation sequence with
/// `|x - approximant(n)| <= 2^-n` for every precision index `n`.
#[derive(Clone)]
pub struct ApproxReal {
    approximant: Arc<ApproximantFn>,
    provenance: Provenance,
}

impl ApproxReal {
    /// Wraps an approximation function. The caller vouches for the
    /// `2^-n` accuracy contract.
    pub fn from_fn<F>(provenance: Provenance, f: F) -> Self
    where
        F: Fn(u64) -> ScaledRational + Send + Sync + 'static,
    {
        ApproxReal {
            approximant: Arc::new(f),
            provenance,
        }
    }

    pub fn approximant(&self, n: u64) -> Rational {
        (self.approximant)(n).to_rational()
    }

    pub fn approximant_scaled(&self, n: u64) -> ScaledRational {
        (self.approximant)(n)
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `1 - x`, with the same accuracy schedule.
    pub fn complement(&self) -> ApproxReal {
        let inner = self.clone();
        ApproxReal::from_fn(Provenance::Derived, move |n| {
            ScaledRational::exact(Rational::one() - inner.approximant(n))
        })
    }
}

impl fmt::Debug for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ApproxReal")
            .field("provenance", &self.provenance)
            .field("approximant(0)", &self.approximant(0))
            .finish()
    }
}

pub fn real_from_rational(value: Rational) -> ApproxReal {
    ApproxReal::from_fn(Provenance::ExactRational, move |_| {
        ScaledRational::exact(value.clone())
    })
}

/// Monotone halting pattern of some machine: `halts_within(m)` is true once
/// the machine has stopped after at most `m` steps.
#[derive(Clone)]
pub struct StepPredicate {
    halts_within: Arc<dyn Fn(u64) -> bool + Send + Sync>,
}

impl StepPredicate {
    /// The predicate must be monotone in `m`.
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(u64) -> bool + Send + Sync + 'static,
    {
        StepPredicate {
            halts_within: Arc::new(f),
        }
    }

    pub fn halting_at(step: u64) -> Self {
        StepPredicate::from_fn(move |m| m >= step)
    }

    pub fn never_halting() -> Self {
        StepPredicate::from_fn(|_| false)
    }

    pub fn halts_within(&self, m: u64) -> bool {
        (self.halts_within)(m)
    }

    /// Smallest `l <= m` with `halts_within(l)`, if any.
    pub fn first_halt_within(&self, m: u64) -> Option<u64> {
        if !self.halts_within(m) {
            return None;
        }
        let (mut lo, mut hi) = (0u64, m);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.halts_within(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }
}

impl fmt::Debug for StepPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("StepPredicate(..)")
    }
}

/// Real number hidden behind a halting pattern: `1/2^l` if the predicate
/// first holds at step `l`, and `0` if it never holds.
///
/// `approximant(m)` is `1/2^l` once the halt at `l <= m` has been observed and
/// `1/2^m` before that.
pub fn specker_real(predicate: StepPredicate) -> ApproxReal {
    ApproxReal::from_fn(Provenance::SpeckerSequence, move |m| {
        match predicate.first_halt_within(m) {
            Some(l) => ScaledRational::pow2_neg(l),
            None => ScaledRational::pow2_neg(m),
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Halted { steps_used: u64 },
    BudgetExhausted { budget: u64 },
}

impl Verdict {
    pub fn is_halted(&self) -> bool {
        matches!(self, Verdict::Halted { .. })
    }

    pub fn halt_step(&self) -> Option<u64> {
        match *self {
            Verdict::Halted { steps_used } => Some(steps_used),
            Verdict::BudgetExhausted { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Halted { steps_used } => write!(f, "Halted({steps_used})"),
            Verdict::BudgetExhausted { budget } => write!(f, "BudgetExhausted({budget})"),
        }
    }
}

/// Halts at the smallest `k in 1..=budget` with `approximant(k) - 2^-k > 0`.
///
/// The first positive minorant is also the first positive term of the
/// running maximum of minorants, so no running maximum is kept.
pub fn sign_positive(x: &ApproxReal, budget: u64) -> Verdict {
    for k in 1..=budget {
        if x.approximant_scaled(k).exceeds_pow2_neg(k) {
            return Verdict::Halted { steps_used: k };
        }
    }
    Verdict::BudgetExhausted { budget }
}

/// Halts at the smallest `k in 1..=budget` with `approximant(k) + 2^-k < 0`.
pub fn sign_negative(x: &ApproxReal, budget: u64) -> Verdict {
    for k in 1..=budget {
        if x.approximant_scaled(k).neg().exceeds_pow2_neg(k) {
            return Verdict::Halted { steps_used: k };
        }
    }
    Verdict::BudgetExhausted { budget }
}
