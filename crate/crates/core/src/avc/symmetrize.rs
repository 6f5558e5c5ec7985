//! Symmetrizability of 0-1 AVCs.
//!
//! `U: X -> S` symmetrizes the AVC when, for all inputs `x, x~` and outputs
//! `y`,
//!
//! ```text
//! sum_s [σ_s(x~) = y] U(s|x) = sum_s [σ_s(x) = y] U(s|x~)
//! ```
//!
//! Two deciders are provided. [`is_symmetrizable_enum`] searches uniform
//! symmetrizers supported on states with distinct outputs; it is cheap and
//! combinatorial. [`is_symmetrizable_lp`] solves the linear system exactly
//! and is the ground truth.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::lp::find_feasible;
use crate::ahlswede::ZeroOneAvc;
use crate::exact_num::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetrizeError {
    #[error("enumeration supports at most {max} states, the AVC has {states}")]
    StateSetTooLargeForEnum { states: usize, max: usize },
}

/// A channel `U(s|x)` from inputs to states, rows indexed by input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrizer {
    pub weights: Vec<Vec<Rational>>,
}

impl Symmetrizer {
    /// Checks stochasticity and the symmetrizability identity exactly.
    pub fn verifies(&self, avc: &ZeroOneAvc) -> bool {
        let (nx, ns) = (avc.input_size(), avc.state_count());
        if self.weights.len() != nx || self.weights.iter().any(|row| row.len() != ns) {
            return false;
        }
        let stochastic = self.weights.iter().all(|row| {
            row.iter().all(|w| !w.is_negative()) && row.iter().sum::<Rational>().is_one()
        });
        stochastic
            && (0..nx).all(|x| (x + 1..nx).all(|x2| pair_balanced(avc, &self.weights, x, x2)))
    }
}

/// The identity for the unordered pair `{x, x2}`, all outputs at once.
fn pair_balanced(avc: &ZeroOneAvc, weights: &[Vec<Rational>], x: usize, x2: usize) -> bool {
    let mut lhs = vec![Rational::zero(); avc.output_size()];
    let mut rhs = vec![Rational::zero(); avc.output_size()];
    for s in 0..avc.state_count() {
        lhs[avc.output(s, x2)] += &weights[x][s];
        rhs[avc.output(s, x)] += &weights[x2][s];
    }
    lhs == rhs
}

/// Uniform-support enumeration.
///
/// With `V_x = {σ_s(x) : s}`, the AVC is declared non-symmetrizable when some
/// pair `V_x, V_x~` is disjoint. Otherwise, for `ν = 1..=min |V_x ∩ V_x~|`,
/// each input gets a size-`ν` state set whose outputs are pairwise distinct
/// and weight `1/ν` on it; the first assignment (lexicographic in inputs,
/// then state subsets) satisfying the identity is returned.
pub fn is_symmetrizable_enum(avc: &ZeroOneAvc, max_states: usize) -> Result<Option<Symmetrizer>, SymmetrizeError> {
    let (nx, ns) = (avc.input_size(), avc.state_count());
    if ns > max_states {
        return Err(SymmetrizeError::StateSetTooLargeForEnum {
            states: ns,
            max: max_states,
        });
    }
    let outputs: Vec<BTreeSet<usize>> = (0..nx).map(|x| avc.reachable_outputs(x)).collect();
    let mut nu_max = usize::MAX;
    for x in 0..nx {
        for x2 in x + 1..nx {
            nu_max = nu_max.min(outputs[x].intersection(&outputs[x2]).count());
        }
    }
    if nu_max == 0 {
        return Ok(None);
    }
    for nu in 1..=nu_max {
        let supports: Vec<Vec<Vec<usize>>> = (0..nx)
            .map(|x| {
                combinations(ns, nu)
                    .into_iter()
                    .filter(|set| {
                        let images: BTreeSet<usize> = set.iter().map(|&s| avc.output(s, x)).collect();
                        images.len() == nu
                    })
                    .collect()
            })
            .collect();
        if supports.iter().any(Vec::is_empty) {
            continue;
        }
        let share = Rational::new(BigInt::one(), BigInt::from(nu));
        let mut weights = vec![vec![Rational::zero(); ns]; nx];
        if assign(avc, &supports, &share, &mut weights, 0) {
            return Ok(Some(Symmetrizer { weights }));
        }
    }
    Ok(None)
}

fn assign(
    avc: &ZeroOneAvc,
    supports: &[Vec<Vec<usize>>],
    share: &Rational,
    weights: &mut [Vec<Rational>],
    x: usize,
) -> bool {
    if x == supports.len() {
        return true;
    }
    for set in &supports[x] {
        for &s in set {
            weights[x][s] = share.clone();
        }
        if (0..x).all(|x1| pair_balanced(avc, weights, x1, x)) && assign(avc, supports, share, weights, x + 1) {
            return true;
        }
        for &s in set {
            weights[x][s] = Rational::zero();
        }
    }
    false
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn walk(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for s in start..n {
            if n - s < k - current.len() {
                break;
            }
            current.push(s);
            walk(s + 1, n, k, current, out);
            current.pop();
        }
    }
    walk(0, n, k, &mut current, &mut out);
    out
}

/// Exact linear feasibility in the variables `U(s|x) >= 0`.
///
/// Duplicate states are merged before solving; their weight is reported on
/// the first index of each duplicate class. A returned symmetrizer has been
/// re-verified against the identity.
pub fn is_symmetrizable_lp(avc: &ZeroOneAvc) -> Option<Symmetrizer> {
    let (nx, ny, ns) = (avc.input_size(), avc.output_size(), avc.state_count());
    let mut distinct: Vec<usize> = Vec::new();
    for s in 0..ns {
        if !distinct.iter().any(|&t| avc.states()[t] == avc.states()[s]) {
            distinct.push(s);
        }
    }
    let k = distinct.len();
    let var = |x: usize, j: usize| x * k + j;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for x in 0..nx {
        let mut row = vec![Rational::zero(); nx * k];
        for j in 0..k {
            row[var(x, j)] = Rational::one();
        }
        a.push(row);
        b.push(Rational::one());
    }
    for x in 0..nx {
        for x2 in x + 1..nx {
            for y in 0..ny {
                let mut row = vec![Rational::zero(); nx * k];
                for (j, &s) in distinct.iter().enumerate() {
                    if avc.output(s, x2) == y {
                        row[var(x, j)] += Rational::one();
                    }
                    if avc.output(s, x) == y {
                        row[var(x2, j)] -= Rational::one();
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    a.push(row);
                    b.push(Rational::zero());
                }
            }
        }
    }
    let solution = find_feasible(&a, &b)?;
    let mut weights = vec![vec![Rational::zero(); ns]; nx];
    for x in 0..nx {
        for (j, &s) in distinct.iter().enumerate() {
            weights[x][s] = solution[var(x, j)].clone();
        }
    }
    let symmetrizer = Symmetrizer { weights };
    assert!(
        symmetrizer.verifies(avc),
        "LP solution failed re-verification"
    );
    Some(symmetrizer)
}
