//! Exact feasibility of `A x = b, x >= 0` over the rationals.
//!
//! Phase one of the simplex method on a dense tableau, with Bland's rule so
//! that the pivot sequence (and the returned point) is deterministic and
//! cycling cannot occur.

use num_traits::{One, Signed, Zero};

use crate::exact_num::Rational;

/// A point of `{x >= 0 : A x = b}`, or `None` if the set is empty.
pub fn find_feasible(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 {
        return Some(vec![Rational::zero(); cols]);
    }
    // columns: original | artificial | rhs
    let width = cols + rows + 1;
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), cols);
        let flip = rhs.is_negative();
        let mut line = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            line[j] = if flip { -v.clone() } else { v.clone() };
        }
        line[cols + i] = Rational::one();
        line[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        tableau.push(line);
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    // reduced costs of the phase-one objective: minimize the artificial sum
    let mut cost = vec![Rational::zero(); width];
    for line in &tableau {
        for j in 0..cols {
            cost[j] -= &line[j];
        }
        cost[width - 1] -= &line[width - 1];
    }

    while let Some(enter) = (0..cols + rows).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, line) in tableau.iter().enumerate() {
            if line[enter].is_positive() {
                let ratio = &line[width - 1] / &line[enter];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a pivot row always exists
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tableau, &mut cost, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &var) in basis.iter().enumerate() {
        if var < cols {
            x[var] = tableau[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(tableau: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let factor = tableau[row][col].clone();
    for v in tableau[row].iter_mut() {
        *v /= &factor;
    }
    let pivot_line = tableau[row].clone();
    for (i, line) in tableau.iter_mut().enumerate() {
        if i == row || line[col].is_zero() {
            continue;
        }
        let scale = line[col].clone();
        for (v, p) in line.iter_mut().zip(&pivot_line) {
            *v -= &scale * p;
        }
    }
    if !cost[col].is_zero() {
        let scale = cost[col].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_line) {
            *v -= &scale * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::rational;

    fn r(v: i64) -> Rational {
        rational(v, 1)
    }

    fn check(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, rhs) in a.iter().zip(b) {
            let lhs: Rational = row.iter().zip(x).map(|(p, q)| p * q).sum();
            assert_eq!(&lhs, rhs);
        }
    }

    #[test]
    fn simple_feasible() {
        let a = vec![vec![r(1), r(1), r(0)], vec![r(1), r(-1), r(1)]];
        let b = vec![r(1), rational(1, 3)];
        let x = find_feasible(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn simple_infeasible() {
        // x + y = 1, x + y = 2
        let a = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
        assert!(find_feasible(&a, &[r(1), r(2)]).is_none());
        // x - y = -1 with only x >= 0 ... y >= 0 makes it feasible; force x = -1
        let a = vec![vec![r(1)]];
        assert!(find_feasible(&a, &[r(-1)]).is_none());
    }

    #[test]
    fn redundant_rows() {
        let a = vec![vec![r(1), r(1)], vec![r(2), r(2)], vec![r(1), r(0)]];
        let b = vec![r(1), r(2), rational(1, 4)];
        let x = find_feasible(&a, &b).unwrap();
        check(&a, &b, &x);
        assert_eq!(x, vec![rational(1, 4), rational(3, 4)]);
    }

    #[test]
    fn negative_rhs_is_normalized() {
        let a = vec![vec![r(-1), r(-1)]];
        let b = vec![r(-3)];
        let x = find_feasible(&a, &b).unwrap();
        check(&a, &b, &x);
    }
}
