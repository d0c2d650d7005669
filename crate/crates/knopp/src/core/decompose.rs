//! Carathéodory and barycentric-measure representations of core points over
//! an estimated cluster set.

use crate::cluster::ClusterSet;
use crate::error::{Error, Result};
use crate::geometry::{hull_membership, hull_membership_capped, HullMembership};
use crate::scalar::Real;

/// Convex weights over cluster points certifying a representation
/// `p = Σ weights[i] · supports[i]`. Read as a finitely supported
/// probability measure with barycenter `p`.
#[derive(Clone, Debug)]
pub struct ConvexCombination<T> {
    pub supports: Vec<Vec<T>>,
    pub weights: Vec<T>,
}

impl<T: Real> ConvexCombination<T> {
    /// The represented point `Σ w_i z_i`.
    pub fn barycenter(&self) -> Vec<T> {
        let dim = self.supports.first().map_or(0, Vec::len);
        let mut out = vec![T::zero(); dim];
        for (z, &w) in self.supports.iter().zip(&self.weights) {
            for (o, &c) in out.iter_mut().zip(z) {
                *o = *o + w * c;
            }
        }
        out
    }

    pub fn weight_sum(&self) -> T {
        self.weights.iter().fold(T::zero(), |a, &b| a + b)
    }
}

fn from_membership<T: Real>(
    m: HullMembership<T>,
    points: &[Vec<T>],
) -> Result<ConvexCombination<T>> {
    match m {
        HullMembership::Inside(w) => Ok(ConvexCombination {
            supports: w.indices.iter().map(|&i| points[i].clone()).collect(),
            weights: w.weights,
        }),
        HullMembership::Outside(h) => Err(Error::NotInHull {
            normal: h.normal.iter().map(|&v| v.approx_f64()).collect(),
            offset: h.offset.approx_f64(),
        }),
    }
}

/// Express `p` as a convex combination of at most `k+1` cluster points
/// (exact rational LP plus affine reduction). Points outside the hull get a
/// non-membership error carrying the separating halfspace.
pub fn caratheodory_decompose<T: Real>(
    p: &[T],
    clusters: &ClusterSet<T>,
) -> Result<ConvexCombination<T>> {
    if clusters.points.is_empty() {
        return Err(Error::EmptyInput {
            what: "cluster set",
        });
    }
    from_membership(hull_membership_capped(p, &clusters.points)?, &clusters.points)
}

/// Discrete barycentric measure on cluster points with barycenter `p`; like
/// the Carathéodory decomposition but without the support-size cap.
pub fn choquet_measure<T: Real>(
    p: &[T],
    clusters: &ClusterSet<T>,
) -> Result<ConvexCombination<T>> {
    if clusters.points.is_empty() {
        return Err(Error::EmptyInput {
            what: "cluster set",
        });
    }
    from_membership(hull_membership(p, &clusters.points)?, &clusters.points)
}
