//! Ideal cluster point estimation by adaptive grid refinement.
//!
//! A cell center is a cluster candidate when the indices of the window
//! points falling in the cell (sup-norm radius `eps`) form a set the ideal
//! model does not call small. Surviving cells are subdivided with a one-cell
//! halo until the target resolution is reached.

use crate::error::{Error, Result};
use crate::ideal::FiniteIdealModel;
use crate::limits::ensure_ideal_bounded;
use crate::scalar::Real;
use crate::sequence::{Scale, SequenceWindow};
use std::collections::BTreeSet;

/// Finite ε-net approximation of the set of ideal cluster points.
#[derive(Clone, Debug)]
pub struct ClusterSet<T> {
    /// Surviving cell centers.
    pub points: Vec<Vec<T>>,
    /// Final detection radius (sup-norm cell half-width).
    pub radius: T,
    pub scale: Scale,
    pub model: String,
}

#[derive(Clone, Debug)]
pub struct ClusterParams<T> {
    /// Target detection radius.
    pub eps_final: T,
    /// Maximum number of subdivision rounds.
    pub rounds: usize,
    /// Ideal-boundedness bound; `None` skips the check.
    pub bound: Option<T>,
    /// Search box override (lo, hi); defaults to the window bounding box.
    pub search_box: Option<(Vec<T>, Vec<T>)>,
}

impl<T: Real> Default for ClusterParams<T> {
    fn default() -> Self {
        ClusterParams {
            eps_final: T::of_f64(1e-2),
            rounds: 40,
            bound: Some(T::of_f64(100.0)),
            search_box: None,
        }
    }
}

/// One grid cell as integer lattice coordinates at some refinement level.
type Cell = Vec<i64>;

struct Grid<T> {
    lo: Vec<T>,
    eps: T,
    counts: Vec<i64>,
}

impl<T: Real> Grid<T> {
    fn center(&self, cell: &Cell) -> Vec<T> {
        cell.iter()
            .zip(&self.lo)
            .map(|(&c, &l)| l + self.eps * T::of_f64(2.0 * c as f64 + 1.0))
            .collect()
    }

    fn in_bounds(&self, cell: &Cell) -> bool {
        cell.iter()
            .zip(&self.counts)
            .all(|(&c, &n)| c >= 0 && c < n)
    }
}

/// Is `p` a cluster candidate at radius `eps`: do the indices of window
/// points with `‖x_n − p‖_∞ <= eps` form a non-small set?
pub fn is_cluster_point<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    p: &[T],
    eps: T,
) -> Result<bool> {
    if p.len() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: p.len(),
        });
    }
    if !(eps > T::zero()) {
        return Err(Error::parameter("eps", "must be positive"));
    }
    let hits = x.hit_set(|v| crate::scalar::dist_inf(v, p) <= eps);
    Ok(!model.is_small(&hits, x.scale().bound())?)
}

/// Estimate the cluster set by coarse-to-fine refinement. Deterministic:
/// cells are visited in lattice order.
pub fn estimate_clusters<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    params: &ClusterParams<T>,
) -> Result<ClusterSet<T>> {
    if !(params.eps_final > T::zero()) {
        return Err(Error::parameter("eps_final", "must be positive"));
    }
    if let Some(bound) = params.bound {
        ensure_ideal_bounded(x, model, bound)?;
    }
    let dim = x.dim();
    let scale = x.scale().bound();

    let (lo, hi) = match &params.search_box {
        Some((lo, hi)) => {
            if lo.len() != dim || hi.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: lo.len().min(hi.len()),
                });
            }
            (lo.clone(), hi.clone())
        }
        None => x.bounding_box(),
    };
    let extent = lo
        .iter()
        .zip(&hi)
        .map(|(&a, &b)| b - a)
        .fold(T::zero(), T::max);
    // Degenerate boxes (constant windows) still get a workable grid.
    let extent = extent.max(params.eps_final * T::of_f64(2.0));
    let mut eps = (extent / T::of_f64(8.0)).max(params.eps_final);

    let cell_counts = |eps: T| -> Vec<i64> {
        lo.iter()
            .zip(&hi)
            .map(|(&a, &b)| {
                let span = (b - a).max(T::zero());
                ((span / (T::of_f64(2.0) * eps)).ceil().approx_f64() as i64).max(1)
            })
            .collect()
    };

    let mut grid = Grid {
        lo: lo.clone(),
        eps,
        counts: cell_counts(eps),
    };
    // Level-0 cells: the full coarse cover.
    let mut cells: BTreeSet<Cell> = {
        let mut acc: Vec<Cell> = vec![vec![]];
        for d in 0..dim {
            acc = acc
                .into_iter()
                .flat_map(|c| {
                    (0..grid.counts[d]).map(move |i| {
                        let mut cc = c.clone();
                        cc.push(i);
                        cc
                    })
                })
                .collect();
        }
        acc.into_iter().collect()
    };

    let mut round = 0usize;
    loop {
        // Keep the non-small cells. The hit radius gets a relative nudge so
        // points sitting exactly on a cell edge (box corners in particular)
        // cannot drop out of every cell through rounding.
        let eps_test = grid.eps * T::of_f64(1.0 + 1e-9);
        let mut survivors: BTreeSet<Cell> = BTreeSet::new();
        for cell in &cells {
            let center = grid.center(cell);
            let hits = x.hit_set(|v| crate::scalar::dist_inf(v, &center) <= eps_test);
            if !model.is_small(&hits, scale)? {
                survivors.insert(cell.clone());
            }
        }

        if eps <= params.eps_final || round >= params.rounds || survivors.is_empty() {
            let points = survivors.iter().map(|c| grid.center(c)).collect();
            return Ok(ClusterSet {
                points,
                radius: grid.eps,
                scale: x.scale(),
                model: model.name().to_string(),
            });
        }

        // One-cell halo so boundary-straddling clusters survive refinement.
        let mut with_halo: BTreeSet<Cell> = BTreeSet::new();
        for cell in &survivors {
            let mut stack: Vec<Cell> = vec![vec![]];
            for d in 0..dim {
                stack = stack
                    .into_iter()
                    .flat_map(|c| {
                        (-1..=1i64).map(move |o| {
                            let mut cc = c.clone();
                            cc.push(cell[d] + o);
                            cc
                        })
                    })
                    .collect();
            }
            for c in stack {
                if grid.in_bounds(&c) {
                    with_halo.insert(c);
                }
            }
        }

        // Subdivide into 2^k children.
        eps = eps / T::of_f64(2.0);
        round += 1;
        grid = Grid {
            lo: lo.clone(),
            eps,
            counts: cell_counts(eps),
        };
        let mut children: BTreeSet<Cell> = BTreeSet::new();
        for cell in &with_halo {
            let mut stack: Vec<Cell> = vec![vec![]];
            for d in 0..dim {
                stack = stack
                    .into_iter()
                    .flat_map(|c| {
                        [0i64, 1].into_iter().map(move |o| {
                            let mut cc = c.clone();
                            cc.push(2 * cell[d] + o);
                            cc
                        })
                    })
                    .collect();
            }
            for c in stack {
                if grid.in_bounds(&c) {
                    children.insert(c);
                }
            }
        }
        cells = children;
    }
}
