//! Convex polytopes as the computational image of closed convex hulls.
//!
//! For ambient dimension at most 3 a polytope carries both a vertex list and
//! its supporting halfspaces. Above dimension 3 vertex enumeration is not
//! attempted: the polytope keeps a lazy support-function representation,
//! either as hull generators or as a halfspace intersection (evaluated by a
//! small LP).

use super::clip::intersect_halfspaces;
use super::hull::convex_hull;
use super::lp::{lp_solve, Cmp, Constraint, LpProblem};
use crate::error::{Error, Result};
use crate::scalar::{dist2, dot, Real};

/// Closed halfspace `{z : <normal, z> <= offset}` with a unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Real> Halfspace<T> {
    pub fn new(normal: Vec<T>, offset: T) -> Result<Self> {
        let n = crate::scalar::norm2(&normal);
        if (n - T::one()).abs() > T::of_f64(1e-12) {
            return Err(Error::parameter("normal", "must have unit length"));
        }
        Ok(Halfspace { normal, offset })
    }

    /// `<normal, p> - offset`; positive outside.
    pub fn excess(&self, p: &[T]) -> T {
        dot(&self.normal, p) - self.offset
    }
}

#[derive(Clone, Debug)]
pub enum Polytope<T> {
    /// The empty set, an explicit and valid outcome.
    Empty { dim: usize },
    /// Dual description: vertices plus supporting halfspaces (`k <= 3`).
    Concrete {
        dim: usize,
        vertices: Vec<Vec<T>>,
        halfspaces: Vec<Halfspace<T>>,
    },
    /// Hull of generator points, support evaluated lazily (`k > 3`).
    SupportHull { dim: usize, generators: Vec<Vec<T>> },
    /// Halfspace intersection, support evaluated by LP (`k > 3`).
    SupportCut {
        dim: usize,
        halfspaces: Vec<Halfspace<T>>,
    },
}

impl<T: Real> Polytope<T> {
    /// Convex hull of a point set.
    pub fn from_points(dim: usize, points: &[Vec<T>]) -> Result<Self> {
        if points.is_empty() {
            return Ok(Polytope::Empty { dim });
        }
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        if dim <= 3 {
            let hull = convex_hull(dim, points)?;
            Ok(Polytope::Concrete {
                dim,
                vertices: hull.vertices,
                halfspaces: hull.halfspaces,
            })
        } else {
            Ok(Polytope::SupportHull {
                dim,
                generators: points.to_vec(),
            })
        }
    }

    /// Intersection of halfspaces.
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<Halfspace<T>>) -> Result<Self> {
        if dim <= 3 {
            let raw = intersect_halfspaces(dim, &halfspaces)?;
            if raw.is_empty() {
                return Ok(Polytope::Empty { dim });
            }
            // Canonicalize the clipped cloud: clean vertices plus exactly
            // supporting halfspaces.
            let hull = convex_hull(dim, &raw)?;
            Ok(Polytope::Concrete {
                dim,
                vertices: hull.vertices,
                halfspaces: hull.halfspaces,
            })
        } else {
            Ok(Polytope::SupportCut { dim, halfspaces })
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Polytope::Empty { dim }
            | Polytope::Concrete { dim, .. }
            | Polytope::SupportHull { dim, .. }
            | Polytope::SupportCut { dim, .. } => *dim,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Polytope::Empty { .. })
    }

    /// Vertex list when enumerated (`k <= 3`).
    pub fn vertices(&self) -> Option<&[Vec<T>]> {
        match self {
            Polytope::Concrete { vertices, .. } => Some(vertices),
            _ => None,
        }
    }

    /// A point set whose hull is the polytope: vertices or generators.
    pub fn generators(&self) -> Option<&[Vec<T>]> {
        match self {
            Polytope::Concrete { vertices, .. } => Some(vertices),
            Polytope::SupportHull { generators, .. } => Some(generators),
            _ => None,
        }
    }

    pub fn halfspaces(&self) -> Option<&[Halfspace<T>]> {
        match self {
            Polytope::Concrete { halfspaces, .. } | Polytope::SupportCut { halfspaces, .. } => {
                Some(halfspaces)
            }
            _ => None,
        }
    }

    /// Support value `max {<u, z> : z in P}`; `None` for the empty set.
    pub fn support(&self, u: &[T]) -> Option<T> {
        match self {
            Polytope::Empty { .. } => None,
            Polytope::Concrete { vertices: pts, .. }
            | Polytope::SupportHull {
                generators: pts, ..
            } => pts
                .iter()
                .map(|p| dot(u, p))
                .fold(None, |acc: Option<T>, v| Some(acc.map_or(v, |a| a.max(v)))),
            Polytope::SupportCut { dim, halfspaces } => {
                support_by_lp(*dim, halfspaces, u)
            }
        }
    }

    /// Largest halfspace excess of `p` (negative strictly inside); falls
    /// back to a hull-distance style test for generator representations.
    pub fn boundary_excess(&self, p: &[T]) -> Option<T> {
        match self {
            Polytope::Empty { .. } => None,
            Polytope::Concrete { halfspaces, .. } | Polytope::SupportCut { halfspaces, .. } => {
                halfspaces
                    .iter()
                    .map(|h| h.excess(p))
                    .fold(None, |acc: Option<T>, v| {
                        Some(acc.map_or(v, |a| a.max(v)))
                    })
            }
            Polytope::SupportHull { generators, .. } => {
                super::distance::point_to_hull_distance(p, generators).ok()
            }
        }
    }

    /// Membership within an additive tolerance on halfspace excess.
    pub fn contains(&self, p: &[T], tol: T) -> bool {
        match self.boundary_excess(p) {
            None => false,
            Some(e) => e <= tol,
        }
    }

    /// Largest pairwise distance for enumerable shapes, or a support-sampled
    /// estimate for halfspace-only shapes. `None` for the empty set.
    pub fn diameter(&self) -> Option<T> {
        match self {
            Polytope::Empty { .. } => None,
            Polytope::Concrete { vertices: pts, .. }
            | Polytope::SupportHull {
                generators: pts, ..
            } => {
                let mut best = T::zero();
                for (i, a) in pts.iter().enumerate() {
                    for b in &pts[i + 1..] {
                        best = best.max(dist2(a, b));
                    }
                }
                Some(best)
            }
            Polytope::SupportCut { dim, .. } => {
                let dirs = super::directions::direction_set::<T>(*dim, 32 * *dim);
                let mut best = T::zero();
                for u in &dirs {
                    let neg: Vec<T> = u.iter().map(|&v| -v).collect();
                    let (a, b) = (self.support(u)?, self.support(&neg)?);
                    best = best.max(a + b);
                }
                Some(best)
            }
        }
    }

    /// Componentwise bounding box.
    pub fn bounding_box(&self) -> Option<(Vec<T>, Vec<T>)> {
        match self {
            Polytope::Empty { .. } => None,
            Polytope::Concrete { vertices: pts, .. }
            | Polytope::SupportHull {
                generators: pts, ..
            } => {
                let mut lo = pts[0].clone();
                let mut hi = pts[0].clone();
                for p in pts {
                    for j in 0..p.len() {
                        lo[j] = lo[j].min(p[j]);
                        hi[j] = hi[j].max(p[j]);
                    }
                }
                Some((lo, hi))
            }
            Polytope::SupportCut { dim, .. } => {
                let mut lo = vec![T::zero(); *dim];
                let mut hi = vec![T::zero(); *dim];
                for j in 0..*dim {
                    let mut e = vec![T::zero(); *dim];
                    e[j] = T::one();
                    hi[j] = self.support(&e)?;
                    e[j] = -T::one();
                    lo[j] = -self.support(&e)?;
                }
                Some((lo, hi))
            }
        }
    }

    /// Coordinatewise midpoint of the bounding box.
    pub fn center(&self) -> Option<Vec<T>> {
        let (lo, hi) = self.bounding_box()?;
        Some(
            lo.iter()
                .zip(&hi)
                .map(|(&a, &b)| (a + b) / T::of_f64(2.0))
                .collect(),
        )
    }
}

/// Support function of a halfspace intersection by LP over `z = z+ - z-`.
fn support_by_lp<T: Real>(dim: usize, halfspaces: &[Halfspace<T>], u: &[T]) -> Option<T> {
    let mut constraints = Vec::with_capacity(halfspaces.len());
    for h in halfspaces {
        let mut coeffs = Vec::with_capacity(2 * dim);
        for &n in &h.normal {
            coeffs.push(n.approx_f64());
        }
        for &n in &h.normal {
            coeffs.push(-n.approx_f64());
        }
        constraints.push(Constraint::new(coeffs, Cmp::Le, h.offset.approx_f64()));
    }
    let mut objective = Vec::with_capacity(2 * dim);
    for &v in u {
        objective.push(v.approx_f64());
    }
    for &v in u {
        objective.push(-v.approx_f64());
    }
    let problem = LpProblem {
        num_vars: 2 * dim,
        objective,
        constraints,
    };
    match lp_solve(&problem).ok()? {
        super::lp::LpOutcome::Optimal(sol) => Some(T::of_f64(sol.objective)),
        _ => None,
    }
}
