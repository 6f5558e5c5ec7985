//! Minimization of convex functions known only through value brackets.

/// `lower <= f(t) <= upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Result of a certified one-dimensional minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub argmin: f64,
    /// Brackets the minimum value of `f` on `[0, 1]`.
    pub value: Bracket,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MinimizeError<E> {
    Evaluation(E),
    /// The certified gap stayed above tolerance; carries the final state.
    GapNotClosed(Minimum),
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Sample {
    pub t: f64,
    pub f: Bracket,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_GOLDEN_STEPS: usize = 200;

/// Golden-section search for the minimum of a convex `f` on `[0, 1]`.
///
/// Stops once the best upper value and a convexity lower bound on the
/// minimum are within `tol`. The lower bound extends secants of neighboring
/// samples, using the pessimistic end of each bracket, and never drops
/// below `floor`.
pub fn minimize_convex_unit<F, E>(mut f: F, tol: f64, floor: f64) -> Result<Minimum, MinimizeError<E>>
where
    F: FnMut(f64) -> Result<Bracket, E>,
{
    let mut samples: Vec<Sample> = Vec::new();
    let mut eval = |t: f64, samples: &mut Vec<Sample>| -> Result<Bracket, MinimizeError<E>> {
        let value = f(t).map_err(MinimizeError::Evaluation)?;
        samples.push(Sample { t, f: value });
        Ok(value)
    };
    let (mut a, mut b) = (0.0f64, 1.0f64);
    eval(a, &mut samples)?;
    eval(b, &mut samples)?;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c, &mut samples)?;
    let mut fd = eval(d, &mut samples)?;
    for _ in 0..MAX_GOLDEN_STEPS {
        let state = summarize(&samples, floor);
        if state.value.width() <= tol {
            return Ok(state);
        }
        if b - a < 1e-15 {
            break;
        }
        if fc.mid() <= fd.mid() {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c, &mut samples)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d, &mut samples)?;
        }
    }
    let state = summarize(&samples, floor);
    if state.value.width() <= tol {
        Ok(state)
    } else {
        Err(MinimizeError::GapNotClosed(state))
    }
}

fn summarize(samples: &[Sample], floor: f64) -> Minimum {
    let best = samples
        .iter()
        .min_by(|x, y| x.f.upper.total_cmp(&y.f.upper))
        .expect("at least one sample");
    Minimum {
        argmin: best.t,
        value: Bracket {
            lower: convex_lower_bound(samples, floor).min(best.f.upper),
            upper: best.f.upper,
        },
        evaluations: samples.len(),
    }
}

/// Lower bound on `min f` over `[0, 1]` for convex `f`, given samples that
/// include both endpoints.
pub(crate) fn convex_lower_bound(samples: &[Sample], floor: f64) -> f64 {
    let mut pts: Vec<Sample> = samples.to_vec();
    pts.sort_by(|x, y| x.t.total_cmp(&y.t));
    pts.dedup_by(|x, y| {
        if x.t == y.t {
            y.f.lower = y.f.lower.max(x.f.lower);
            y.f.upper = y.f.upper.min(x.f.upper);
            true
        } else {
            false
        }
    });
    if pts.len() < 2 {
        return pts.first().map_or(floor, |p| p.f.lower.max(floor));
    }
    let mut bound = f64::INFINITY;
    for i in 0..pts.len() - 1 {
        let (lo, hi) = (pts[i].t, pts[i + 1].t);
        // secant of the pair left of the interval, extended rightwards
        let left = (i >= 1).then(|| {
            let (p, q) = (pts[i - 1], pts[i]);
            let slope = (q.f.lower - p.f.upper) / (q.t - p.t);
            (q.t, q.f.lower, slope)
        });
        // secant of the pair right of the interval, extended leftwards
        let right = (i + 2 < pts.len()).then(|| {
            let (p, q) = (pts[i + 1], pts[i + 2]);
            let slope = (q.f.upper - p.f.lower) / (q.t - p.t);
            (p.t, p.f.lower, slope)
        });
        let line = |l: (f64, f64, f64), t: f64| l.1 + l.2 * (t - l.0);
        let envelope = |t: f64| {
            let mut v = f64::NEG_INFINITY;
            if let Some(l) = left {
                v = v.max(line(l, t));
            }
            if let Some(r) = right {
                v = v.max(line(r, t));
            }
            v
        };
        let mut candidates = vec![lo, hi];
        if let (Some(l), Some(r)) = (left, right) {
            if (l.2 - r.2).abs() > 0.0 {
                // l.1 + l.2 (t - l.0) = r.1 + r.2 (t - r.0)
                let t = (r.1 - l.1 + l.2 * l.0 - r.2 * r.0) / (l.2 - r.2);
                if t > lo && t < hi {
                    candidates.push(t);
                }
            }
        }
        let piece = candidates
            .into_iter()
            .map(envelope)
            .fold(f64::INFINITY, f64::min);
        bound = bound.min(piece.max(floor));
    }
    bound
}

/// Euclidean projection onto the probability simplex.
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - 1.0) / (i + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Outcome of [`projected_subgradient`].
#[derive(Debug, Clone, PartialEq)]
pub struct SubgradientRun {
    pub point: Vec<f64>,
    pub value: f64,
    /// Linearization gap `f(x) - min_i (f(x) + g·(e_i - x))` at the best
    /// point; an estimate only, since `g` is a finite difference.
    pub gap_estimate: f64,
    pub iterations: usize,
}

/// Projected subgradient descent over the simplex with central finite
/// difference subgradients and steps `step0 / sqrt(k)`, tracking the best
/// iterate.
pub fn projected_subgradient<F>(mut f: F, dim: usize, iterations: usize, step0: f64) -> SubgradientRun
where
    F: FnMut(&[f64]) -> f64,
{
    let h = 1e-6;
    let gradient = |x: &[f64], f: &mut F| -> Vec<f64> {
        (0..dim)
            .map(|i| {
                let mut plus = x.to_vec();
                let mut minus = x.to_vec();
                plus[i] += h;
                minus[i] -= h;
                (f(&project_to_simplex(&plus)) - f(&project_to_simplex(&minus))) / (2.0 * h)
            })
            .collect()
    };
    let mut x = vec![1.0 / dim as f64; dim];
    let mut best = (x.clone(), f(&x));
    for k in 1..=iterations {
        let g = gradient(&x, &mut f);
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
        let step = step0 / (k as f64).sqrt() / norm;
        let moved: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
        x = project_to_simplex(&moved);
        let value = f(&x);
        if value < best.1 {
            best = (x.clone(), value);
        }
    }
    let g = gradient(&best.0, &mut f);
    let along: f64 = g.iter().zip(&best.0).map(|(gi, xi)| gi * xi).sum();
    let min_vertex = g.iter().cloned().fold(f64::INFINITY, f64::min);
    SubgradientRun {
        point: best.0,
        value: best.1,
        gap_estimate: (along - min_vertex).max(0.0),
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(v: f64) -> Bracket {
        Bracket { lower: v, upper: v }
    }

    #[test]
    fn quadratic_minimum() {
        let m = minimize_convex_unit::<_, ()>(|t| Ok(exact((t - 0.3) * (t - 0.3) + 1.0)), 1e-9, 0.0).unwrap();
        assert!((m.value.upper - 1.0).abs() < 1e-9);
        assert!(m.value.lower <= 1.0 && m.value.upper >= 1.0);
        assert!((m.argmin - 0.3).abs() < 1e-3);
    }

    #[test]
    fn boundary_minimum() {
        let m = minimize_convex_unit::<_, ()>(|t| Ok(exact(2.0 - t)), 1e-9, 0.0).unwrap();
        assert!((m.value.upper - 1.0).abs() < 1e-9);
        assert!(m.value.lower <= 1.0);
    }

    #[test]
    fn noisy_brackets_are_respected() {
        let m = minimize_convex_unit::<_, ()>(
            |t| {
                let v = (t - 0.7).abs() + 0.5;
                Ok(Bracket { lower: v - 1e-10, upper: v + 1e-10 })
            },
            1e-6,
            0.0,
        )
        .unwrap();
        assert!(m.value.lower <= 0.5 && m.value.upper >= 0.5);
    }

    #[test]
    fn lower_bound_is_valid_on_samples() {
        let f = |t: f64| (t - 0.45).powi(2) * 3.0;
        let samples: Vec<Sample> = [0.0, 0.2, 0.5, 0.55, 1.0]
            .iter()
            .map(|&t| Sample { t, f: exact(f(t)) })
            .collect();
        let bound = convex_lower_bound(&samples, f64::NEG_INFINITY);
        assert!(bound <= 0.0 + 1e-15);
    }

    #[test]
    fn simplex_projection() {
        let p = project_to_simplex(&[0.5, 0.5, 0.5]);
        assert!(p.iter().all(|&v| (v - 1.0 / 3.0).abs() < 1e-12));
        let p = project_to_simplex(&[2.0, 0.0, -1.0]);
        assert_eq!(p, vec![1.0, 0.0, 0.0]);
        let p = project_to_simplex(&[0.2, 0.3, 0.5]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subgradient_on_quadratic() {
        let target = [0.1, 0.2, 0.3, 0.4];
        let run = projected_subgradient(
            |x| x.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum(),
            4,
            2000,
            0.2,
        );
        assert!(run.value < 1e-4);
    }
}
