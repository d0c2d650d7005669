//! Convex-geometry kernel: small exact/float linear programming, hulls,
//! halfspace intersections, separation certificates, and set distances.

mod clip;
mod directions;
mod distance;
mod hull;
pub mod lp;
mod membership;
mod polytope;

pub use clip::intersect_halfspaces;
pub use directions::direction_set;
pub use distance::{
    hausdorff_distance, hausdorff_one_sided, min_norm_offset, point_to_hull_distance,
};
pub use hull::{convex_hull, HullOutput};
pub use lp::{lp_solve, BigRational, Cmp, Constraint, LpOutcome, LpProblem, LpScalar, LpSolution};
pub use membership::{
    caratheodory_reduce, exact_weights, hull_membership, hull_membership_capped, ConvexWeights,
    HullMembership,
};
pub use polytope::{Halfspace, Polytope};

use crate::scalar::{dot, Real};

/// `max_{s in S} <u, s>` over a finite point set.
pub fn support_value<T: Real>(points: &[Vec<T>], u: &[T]) -> crate::Result<T> {
    if points.is_empty() {
        return Err(crate::Error::EmptyInput {
            what: "support point set",
        });
    }
    Ok(points
        .iter()
        .map(|s| dot(u, s))
        .fold(T::neg_infinity(), T::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_value_examples() {
        let square = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ];
        assert_eq!(support_value(&square, &[1.0, 0.0]).unwrap(), 1.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = support_value(&square, &[s, s]).unwrap();
        assert!((v - 2.0f64.sqrt()).abs() < 1e-12);
        let singleton: Vec<Vec<f64>> = vec![vec![0.3, -0.7]];
        let u = [0.6, 0.8];
        assert!(
            (support_value(&singleton, &u).unwrap() - (0.3 * 0.6 - 0.7 * 0.8)).abs() < 1e-12
        );
        assert!(support_value::<f64>(&[], &[1.0]).is_err());
    }

    #[test]
    fn support_value_matches_hull_vertices() {
        // Interior points never change the support function.
        let pts = vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 2.0],
            vec![0.5, 0.5],
            vec![0.7, 0.1],
        ];
        let hull = convex_hull(2, &pts).unwrap();
        for u in direction_set::<f64>(2, 32) {
            let a = support_value(&pts, &u).unwrap();
            let b = support_value(&hull.vertices, &u).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
