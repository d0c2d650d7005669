//! Euclidean point-to-hull distance (Wolfe's min-norm-point algorithm) and
//! Hausdorff distance between polytopes.

use super::polytope::Polytope;
use crate::error::{Error, Result};
use crate::scalar::{dot, norm2, Real};

/// Solve the affine min-norm subproblem over the corral: minimize
/// `‖Σ α_i q_i‖²` subject to `Σ α_i = 1`, via the KKT system.
fn affine_min_norm<T: Real>(corral: &[&[T]]) -> Option<Vec<T>> {
    let r = corral.len();
    let n = r + 1;
    // Rows: [0 1ᵀ | 1] then [1 QᵀQ | 0].
    let mut a = vec![vec![T::zero(); n + 1]; n];
    for j in 0..r {
        a[0][j + 1] = T::one();
    }
    a[0][n] = T::one();
    for i in 0..r {
        a[i + 1][0] = T::one();
        for j in 0..r {
            a[i + 1][j + 1] = dot(corral[i], corral[j]);
        }
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot][col].abs() <= T::of_f64(1e-14) {
            return None;
        }
        a.swap(col, pivot);
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[i][col] / a[col][col];
            if f == T::zero() {
                continue;
            }
            for j in col..=n {
                let d = f * a[col][j];
                a[i][j] = a[i][j] - d;
            }
        }
    }
    Some((0..r).map(|i| a[i + 1][n] / a[i + 1][i + 1]).collect())
}

/// Euclidean distance from `p` to the convex hull of `points`.
pub fn point_to_hull_distance<T: Real>(p: &[T], points: &[Vec<T>]) -> Result<T> {
    Ok(norm2(&min_norm_offset(p, points)?))
}

/// The offset `proj_hull(p) - p` from `p` to its nearest point of
/// `co(points)`, by Wolfe's min-norm-point algorithm on the translated set.
/// Its norm is the hull distance; its negation points outward. The result
/// is certified against the linear minimization oracle before returning.
pub fn min_norm_offset<T: Real>(p: &[T], points: &[Vec<T>]) -> Result<Vec<T>> {
    if points.is_empty() {
        return Err(Error::EmptyInput {
            what: "hull point set",
        });
    }
    if let Some(bad) = points.iter().find(|s| s.len() != p.len()) {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: bad.len(),
        });
    }
    let q: Vec<Vec<T>> = points
        .iter()
        .map(|s| s.iter().zip(p).map(|(&a, &b)| a - b).collect())
        .collect();
    let scale_sq = q
        .iter()
        .map(|v| dot(v, v))
        .fold(T::one(), T::max);
    let eps = T::of_f64(1e-12) * scale_sq;
    let weight_eps = T::of_f64(1e-12);

    // Start at the shortest translated point.
    let start = (0..q.len())
        .min_by(|&i, &j| dot(&q[i], &q[i]).partial_cmp(&dot(&q[j], &q[j])).unwrap())
        .unwrap();
    let mut corral: Vec<usize> = vec![start];
    let mut weights: Vec<T> = vec![T::one()];
    let mut x: Vec<T> = q[start].clone();

    for _ in 0..200 {
        // Linear minimization oracle over all points.
        let j_star = (0..q.len())
            .min_by(|&i, &j| dot(&x, &q[i]).partial_cmp(&dot(&x, &q[j])).unwrap())
            .unwrap();
        let xx = dot(&x, &x);
        if xx - dot(&x, &q[j_star]) <= eps || corral.contains(&j_star) {
            break;
        }
        corral.push(j_star);
        weights.push(T::zero());

        // Minor cycle: pull the affine minimizer back into the simplex.
        loop {
            let members: Vec<&[T]> = corral.iter().map(|&i| q[i].as_slice()).collect();
            let Some(alpha) = affine_min_norm(&members) else {
                // Degenerate corral: drop the smallest-weight member.
                let drop = (0..weights.len())
                    .min_by(|&i, &j| weights[i].partial_cmp(&weights[j]).unwrap())
                    .unwrap();
                corral.remove(drop);
                weights.remove(drop);
                if corral.len() <= 1 {
                    break;
                }
                continue;
            };
            if alpha.iter().all(|&a| a > weight_eps) {
                weights = alpha;
                break;
            }
            // Step from `weights` toward `alpha` until a coordinate dies.
            let mut theta = T::one();
            for i in 0..weights.len() {
                if alpha[i] <= weight_eps {
                    let denom = weights[i] - alpha[i];
                    if denom > T::zero() {
                        theta = theta.min(weights[i] / denom);
                    }
                }
            }
            let mut next_corral = Vec::new();
            let mut next_weights = Vec::new();
            for i in 0..weights.len() {
                let w = weights[i] + theta * (alpha[i] - weights[i]);
                if w > weight_eps {
                    next_corral.push(corral[i]);
                    next_weights.push(w);
                }
            }
            if next_corral.is_empty() {
                // Numerical stall; keep the best single member.
                next_corral.push(corral[0]);
                next_weights.push(T::one());
            }
            corral = next_corral;
            weights = next_weights;
            if corral.len() == 1 {
                weights = vec![T::one()];
                break;
            }
        }
        // Renormalize and recompute the current point.
        let total = weights.iter().fold(T::zero(), |a, &b| a + b);
        for w in weights.iter_mut() {
            *w = *w / total;
        }
        x = vec![T::zero(); p.len()];
        for (&i, &w) in corral.iter().zip(&weights) {
            for (xj, &qj) in x.iter_mut().zip(&q[i]) {
                *xj = *xj + w * qj;
            }
        }
    }
    Ok(x)
}

/// Symmetric Hausdorff distance between nonempty polytopes.
///
/// When both sides expose generator points the result is exact: the farthest
/// point of a polytope from a convex set is attained at a vertex, and each
/// vertex-to-hull distance is computed by the min-norm oracle. Halfspace-only
/// shapes (`k > 3`) fall back to the largest support gap over a deterministic
/// direction net, a lower bound that tightens with the net.
pub fn hausdorff_distance<T: Real>(p: &Polytope<T>, q: &Polytope<T>) -> Result<T> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::EmptyInput {
            what: "polytope (hausdorff distance)",
        });
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    match (p.generators(), q.generators()) {
        (Some(pg), Some(qg)) => {
            let mut best = T::zero();
            for v in pg {
                best = best.max(point_to_hull_distance(v, qg)?);
            }
            for w in qg {
                best = best.max(point_to_hull_distance(w, pg)?);
            }
            Ok(best)
        }
        _ => {
            let dirs = super::directions::direction_set::<T>(p.dim(), 128 * p.dim());
            let mut best = T::zero();
            for u in &dirs {
                let (a, b) = (
                    p.support(u).expect("nonempty"),
                    q.support(u).expect("nonempty"),
                );
                best = best.max((a - b).abs());
            }
            Ok(best)
        }
    }
}

/// One-sided Hausdorff distance `sup_{x in P} d(x, Q)`: how far `P` sticks
/// out of `Q`. Zero means `P ⊆ Q` (within numerics).
pub fn hausdorff_one_sided<T: Real>(p: &Polytope<T>, q: &Polytope<T>) -> Result<T> {
    if p.is_empty() {
        return Ok(T::zero());
    }
    if q.is_empty() {
        return Err(Error::EmptyInput {
            what: "polytope (one-sided hausdorff)",
        });
    }
    match (p.generators(), q.generators()) {
        (Some(pg), Some(qg)) => {
            let mut best = T::zero();
            for v in pg {
                best = best.max(point_to_hull_distance(v, qg)?);
            }
            Ok(best)
        }
        _ => {
            let dirs = super::directions::direction_set::<T>(p.dim(), 128 * p.dim());
            let mut best = T::zero();
            for u in &dirs {
                let (a, b) = (
                    p.support(u).expect("nonempty"),
                    q.support(u).expect("nonempty"),
                );
                best = best.max(a - b);
            }
            Ok(best.max(T::zero()))
        }
    }
}
