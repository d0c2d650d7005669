//! Hull membership with certificates, in exact rational arithmetic.
//!
//! Membership of `p` in `co(S)` is decided by a rational feasibility LP over
//! convex weights; a feasible basic solution certifies membership with at
//! most `k+1` positive weights. On infeasibility a second rational LP finds
//! the best `ℓ∞`-normalized separating functional, certifying exclusion with
//! a strictly positive margin.

use super::lp::{lp_solve, BigRational, Cmp, Constraint, LpOutcome, LpProblem, LpScalar};
use super::polytope::Halfspace;
use crate::error::{Error, Result};
use crate::scalar::{dot, norm2, Real};
use num_traits::{One, Signed, Zero};

/// Convex weights certifying `p = Σ weights[i] · points[indices[i]]`.
#[derive(Clone, Debug)]
pub struct ConvexWeights<T> {
    pub indices: Vec<usize>,
    pub weights: Vec<T>,
}

/// Membership verdict with its certificate. The `Outside` halfspace `(u, r)`
/// satisfies `<u, p> < r <= <u, s>` for every generator `s` (note the
/// orientation: the generators sit on the large side).
#[derive(Clone, Debug)]
pub enum HullMembership<T> {
    Inside(ConvexWeights<T>),
    Outside(Halfspace<T>),
}

impl<T> HullMembership<T> {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullMembership::Inside(_))
    }
}

fn rat<T: Real>(x: T) -> BigRational {
    BigRational::from_f64_exact(x.approx_f64())
}

fn rat_point<T: Real>(p: &[T]) -> Vec<BigRational> {
    p.iter().map(|&x| rat(x)).collect()
}

/// Exact convex weights for `p` over `points`, or `None` when `p` is outside
/// the hull.
pub fn exact_weights<T: Real>(
    p: &[T],
    points: &[Vec<T>],
) -> Result<Option<Vec<(usize, BigRational)>>> {
    let dim = p.len();
    let n = points.len();
    if n == 0 {
        return Err(Error::EmptyInput {
            what: "hull generator set",
        });
    }
    if let Some(bad) = points.iter().find(|s| s.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bad.len(),
        });
    }
    let rp = rat_point(p);
    let rs: Vec<Vec<BigRational>> = points.iter().map(|s| rat_point(s)).collect();

    let mut constraints = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        let coeffs: Vec<BigRational> = rs.iter().map(|s| s[d].clone()).collect();
        constraints.push(Constraint::new(coeffs, Cmp::Eq, rp[d].clone()));
    }
    constraints.push(Constraint::new(
        vec![BigRational::one(); n],
        Cmp::Eq,
        BigRational::one(),
    ));
    let problem = LpProblem {
        num_vars: n,
        objective: vec![BigRational::zero(); n],
        constraints,
    };
    match lp_solve(&problem)? {
        LpOutcome::Optimal(sol) => Ok(Some(
            sol.x
                .into_iter()
                .enumerate()
                .filter(|(_, w)| w.is_positive())
                .collect(),
        )),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("feasibility LP with zero objective"),
    }
}

/// Exact separating functional for `p` outside `co(points)`: rational
/// `(u, margin)` with `<u, s - p> >= margin > 0` for all generators, `u`
/// normalized to the unit sup-norm box.
fn exact_separator<T: Real>(
    p: &[T],
    points: &[Vec<T>],
) -> Result<(Vec<BigRational>, BigRational)> {
    let dim = p.len();
    let rp = rat_point(p);
    let rs: Vec<Vec<BigRational>> = points.iter().map(|s| rat_point(s)).collect();

    // Variables: w_0..w_{dim-1} with u_j = w_j - 1 in [-1, 1], then t >= 0.
    // Maximize t subject to  Σ_j w_j (s-p)_j - t >= Σ_j (s-p)_j.
    let nv = dim + 1;
    let mut constraints = Vec::new();
    for s in &rs {
        let diff: Vec<BigRational> = (0..dim).map(|j| s[j].clone() - rp[j].clone()).collect();
        let mut coeffs = diff.clone();
        coeffs.push(-BigRational::one());
        let rhs = diff.iter().fold(BigRational::zero(), |a, b| a + b.clone());
        constraints.push(Constraint::new(coeffs, Cmp::Ge, rhs));
    }
    for j in 0..dim {
        let mut coeffs = vec![BigRational::zero(); nv];
        coeffs[j] = BigRational::one();
        constraints.push(Constraint::new(
            coeffs,
            Cmp::Le,
            BigRational::from_f64_exact(2.0),
        ));
    }
    let mut objective = vec![BigRational::zero(); nv];
    objective[dim] = BigRational::one();
    let problem = LpProblem {
        num_vars: nv,
        objective,
        constraints,
    };
    match lp_solve(&problem)? {
        LpOutcome::Optimal(sol) => {
            let u: Vec<BigRational> = (0..dim)
                .map(|j| sol.x[j].clone() - BigRational::one())
                .collect();
            Ok((u, sol.objective))
        }
        other => unreachable!("separation LP is feasible and bounded, got {other:?}"),
    }
}

/// Membership of `p` in the convex hull of `points`, with a certificate
/// either way. Verdicts are exact (rational arithmetic on the exact dyadic
/// images of the inputs).
pub fn hull_membership<T: Real>(p: &[T], points: &[Vec<T>]) -> Result<HullMembership<T>> {
    match exact_weights(p, points)? {
        Some(weights) => {
            let (indices, weights) = weights
                .into_iter()
                .map(|(i, w)| (i, T::of_f64(w.to_f64_lossy())))
                .unzip();
            Ok(HullMembership::Inside(ConvexWeights { indices, weights }))
        }
        None => {
            let (u, t) = exact_separator(p, points)?;
            debug_assert!(t.is_positive(), "outside point must separate strictly");
            let uf: Vec<T> = u.iter().map(|v| T::of_f64(v.to_f64_lossy())).collect();
            let len = norm2(&uf);
            let unit: Vec<T> = uf.iter().map(|&v| v / len).collect();
            let offset = points
                .iter()
                .map(|s| dot(&unit, s))
                .fold(T::infinity(), T::min);
            Ok(HullMembership::Outside(Halfspace {
                normal: unit,
                offset,
            }))
        }
    }
}

/// Affine-dependence vector of the columns `[1; z_i]`: exact nullspace
/// element, `None` when the columns are affinely independent.
fn affine_dependence(points: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let r = points.len();
    if r == 0 {
        return None;
    }
    let dim = points[0].len();
    let rows = dim + 1;
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    a.push(vec![BigRational::one(); r]);
    for d in 0..dim {
        a.push(points.iter().map(|z| z[d].clone()).collect());
    }
    // Rational Gauss-Jordan; track pivot column per row.
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..r {
        let Some(pr) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].clone();
        for j in col..r {
            a[row][j] = a[row][j].clone() / inv.clone();
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..r {
                    let d = f.clone() * a[row][j].clone();
                    a[i][j] = a[i][j].clone() - d;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let free_col = (0..r).find(|c| !pivot_cols.contains(c))?;
    let mut mu = vec![BigRational::zero(); r];
    mu[free_col] = BigRational::one();
    for (i, &pc) in pivot_cols.iter().enumerate() {
        mu[pc] = -a[i][free_col].clone();
    }
    Some(mu)
}

/// Reduce exact convex weights to at most `dim + 1` support points by
/// repeatedly cancelling affine dependences; weights stay exact.
pub fn caratheodory_reduce(
    points: &[Vec<BigRational>],
    weights: Vec<(usize, BigRational)>,
) -> Vec<(usize, BigRational)> {
    let dim = points.first().map_or(0, Vec::len);
    let mut current: Vec<(usize, BigRational)> = weights
        .into_iter()
        .filter(|(_, w)| w.is_positive())
        .collect();
    while current.len() > dim + 1 {
        let support: Vec<Vec<BigRational>> = current
            .iter()
            .map(|(i, _)| points[*i].clone())
            .collect();
        let Some(mut mu) = affine_dependence(&support) else {
            break;
        };
        if !mu.iter().any(|m| m.is_positive()) {
            for m in mu.iter_mut() {
                *m = -m.clone();
            }
        }
        let tau = current
            .iter()
            .zip(&mu)
            .filter(|(_, m)| m.is_positive())
            .map(|((_, w), m)| w.clone() / m.clone())
            .min()
            .expect("some positive direction exists");
        current = current
            .into_iter()
            .zip(&mu)
            .map(|((i, w), m)| (i, w - tau.clone() * m.clone()))
            .filter(|(_, w)| w.is_positive())
            .collect();
    }
    current
}

/// Membership with the `Inside` certificate reduced to at most `dim + 1`
/// support points.
pub fn hull_membership_capped<T: Real>(
    p: &[T],
    points: &[Vec<T>],
) -> Result<HullMembership<T>> {
    match exact_weights(p, points)? {
        Some(weights) => {
            let rs: Vec<Vec<BigRational>> = points.iter().map(|s| rat_point(s)).collect();
            let reduced = caratheodory_reduce(&rs, weights);
            let (indices, weights) = reduced
                .into_iter()
                .map(|(i, w)| (i, T::of_f64(w.to_f64_lossy())))
                .unzip();
            Ok(HullMembership::Inside(ConvexWeights { indices, weights }))
        }
        None => hull_membership(p, points),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Vec<Vec<f64>> {
        vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ]
    }

    fn reconstruct(w: &ConvexWeights<f64>, pts: &[Vec<f64>], dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (&i, &wi) in w.indices.iter().zip(&w.weights) {
            for d in 0..dim {
                out[d] += wi * pts[i][d];
            }
        }
        out
    }

    #[test]
    fn origin_inside_diamond() {
        let pts = diamond();
        match hull_membership(&[0.0, 0.0], &pts).unwrap() {
            HullMembership::Inside(w) => {
                let sum: f64 = w.weights.iter().sum();
                assert!((sum - 1.0).abs() < 1e-12);
                assert!(w.weights.iter().all(|&x| x > 0.0));
                let back = reconstruct(&w, &pts, 2);
                assert!(crate::scalar::dist2(&back, &[0.0, 0.0]) < 1e-12);
            }
            HullMembership::Outside(_) => panic!("origin must be inside"),
        }
    }

    #[test]
    fn outside_point_gets_separator() {
        let pts = diamond();
        match hull_membership(&[2.0, 0.0], &pts).unwrap() {
            HullMembership::Outside(h) => {
                // <u, p> < r <= <u, s> for every generator.
                let up = dot(&h.normal, &[2.0, 0.0]);
                assert!(up < h.offset);
                for s in &pts {
                    assert!(dot(&h.normal, s) >= h.offset - 1e-12);
                }
                // The normal points away from p (the sup-norm LP may tie
                // between the diagonal separators and the axis one).
                assert!(h.normal[0] <= -0.5);
            }
            HullMembership::Inside(_) => panic!("point is outside"),
        }
    }

    #[test]
    fn boundary_point_is_inside_exactly() {
        let pts = diamond();
        // Midpoint of an edge: exactly on the boundary.
        assert!(hull_membership(&[0.5, 0.5], &pts).unwrap().is_inside());
        // And epsilon outside is outside, even for tiny epsilon.
        let eps = 1e-9;
        assert!(!hull_membership(&[0.5 + eps, 0.5 + eps], &pts)
            .unwrap()
            .is_inside());
    }

    #[test]
    fn capped_membership_stays_small() {
        // Many generators on a circle; certificates must use at most 3.
        let pts: Vec<Vec<f64>> = (0..12)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / 12.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        for probe in [[0.0, 0.0], [0.3, 0.2], [-0.5, 0.1]] {
            match hull_membership_capped(&probe, &pts).unwrap() {
                HullMembership::Inside(w) => {
                    assert!(w.indices.len() <= 3, "support {:?}", w.indices);
                    let back = reconstruct(&w, &pts, 2);
                    assert!(crate::scalar::dist2(&back, &probe) < 1e-9);
                    let sum: f64 = w.weights.iter().sum();
                    assert!((sum - 1.0).abs() < 1e-9);
                }
                HullMembership::Outside(_) => panic!("probe inside"),
            }
        }
    }

    #[test]
    fn single_point_hull_membership() {
        let pts = vec![vec![0.25, 0.5]];
        assert!(hull_membership(&[0.25, 0.5], &pts).unwrap().is_inside());
        assert!(!hull_membership(&[0.3, 0.5], &pts).unwrap().is_inside());
    }
}
