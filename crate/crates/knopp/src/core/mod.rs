//! The ideal core by three independent constructions, plus convergence and
//! decomposition tests.
//!
//! * `core_by_support`: intersect halfspaces whose offsets are scalar ideal
//!   limits superior of directional projections. The support offset of the
//!   intersection over all large index sets equals that limit, so the
//!   definitional intersection is computed without enumerating large sets.
//! * `core_by_cluster_hull`: convex hull of the estimated cluster set
//!   (the two agree for ideal-bounded windows).
//! * `ball_characterization`: Euclidean ball intersection with radii given
//!   by ideal limits superior of distance sequences; membership is
//!   one-sided-sound over the finite center sample.

mod decompose;

pub use decompose::{caratheodory_decompose, choquet_measure, ConvexCombination};

use crate::cluster::{estimate_clusters, ClusterParams};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, direction_set, Halfspace, Polytope};
use crate::ideal::FiniteIdealModel;
use crate::limits::{ensure_ideal_bounded, ideal_limsup, LimitParams};
use crate::scalar::{dist2, norm2, Real};
use crate::sequence::{Scale, SequenceWindow};

/// Which construction produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Support,
    ClusterHull,
    Ball,
}

impl Construction {
    pub fn label(self) -> &'static str {
        match self {
            Construction::Support => "support",
            Construction::ClusterHull => "cluster_hull",
            Construction::Ball => "ball",
        }
    }
}

/// Shared parameters of the core constructions.
#[derive(Clone, Debug)]
pub struct CoreParams<T> {
    /// Direction count for the support construction; `0` means `64·k`.
    /// One dimension always uses the two signs.
    pub directions: usize,
    /// Value-grid step of the scalar limit searches.
    pub delta: T,
    /// Target cluster detection radius.
    pub eps_final: T,
    /// Maximum refinement rounds.
    pub rounds: usize,
    /// Center budget of the ball characterization.
    pub centers: usize,
    /// Ideal-boundedness bound; `None` skips the check.
    pub bound: Option<T>,
    /// Cluster search box override.
    pub search_box: Option<(Vec<T>, Vec<T>)>,
}

impl<T: Real> Default for CoreParams<T> {
    fn default() -> Self {
        CoreParams {
            directions: 0,
            delta: T::of_f64(1e-2),
            eps_final: T::of_f64(1e-2),
            rounds: 40,
            centers: 128,
            bound: Some(T::of_f64(100.0)),
            search_box: None,
        }
    }
}

impl<T: Real> CoreParams<T> {
    pub fn unchecked(mut self) -> Self {
        self.bound = None;
        self
    }

    fn effective_directions(&self, dim: usize) -> usize {
        if self.directions == 0 {
            64 * dim
        } else {
            self.directions
        }
    }

    fn limit_params(&self) -> LimitParams<T> {
        LimitParams {
            delta: self.delta,
            bound: None, // boundedness is checked once, on the vector window
        }
    }

    fn cluster_params(&self) -> ClusterParams<T> {
        ClusterParams {
            eps_final: self.eps_final,
            rounds: self.rounds,
            bound: None,
            search_box: self.search_box.clone(),
        }
    }
}

/// A computed core with its provenance.
#[derive(Clone, Debug)]
pub struct CoreReport<T> {
    pub model: String,
    pub construction: Construction,
    pub result: Polytope<T>,
    pub scale: Scale,
    pub directions_used: usize,
    pub params: CoreParams<T>,
}

fn check_bound<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    params: &CoreParams<T>,
) -> Result<()> {
    match params.bound {
        Some(b) => ensure_ideal_bounded(x, model, b),
        None => Ok(()),
    }
}

/// Definitional core via support halfspaces: for each sampled unit
/// direction `u` the supporting offset is the scalar ideal limsup of the
/// projections `<u, x_n>`; one dimension reduces to the exact interval
/// `[liminf, limsup]`.
///
/// A fixed direction sample leaves spurious vertices sticking out along the
/// edges of polytopal cores (the protrusion scales with the angular gap, so
/// driving it below the grid step by sampling alone would need tens of
/// thousands of directions in 3D). Instead, vertices of the intersection
/// are cut adaptively: any vertex exceeding the measured support value in
/// its own outward direction by more than half a grid step contributes a
/// new halfspace, until every vertex is certified or the round budget runs
/// out.
pub fn core_by_support<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    params: &CoreParams<T>,
) -> Result<CoreReport<T>> {
    let dim = x.dim();
    let count = params.effective_directions(dim);
    if dim > 1 && count < 2 * dim {
        return Err(Error::parameter(
            "directions",
            format!("need at least {} directions for dimension {dim}", 2 * dim),
        ));
    }
    check_bound(x, model, params)?;
    let lp = params.limit_params();

    // Support evidence along a direction, plus a contact witness: the
    // centroid of the window points whose projection enters the top grid
    // cell. That population is not small by construction, so isolated
    // outliers riding on a small index set cannot drag the witness around;
    // the witnesses form an inner scaffold of the core.
    let mut support_of = |u: &[T]| -> Result<(T, Vec<T>)> {
        let proj = x.project(u)?;
        let offset = ideal_limsup(&proj, model, &lp)?;
        let threshold = offset - params.delta;
        let mut witness = vec![T::zero(); dim];
        let mut count = 0usize;
        for (pos, &value) in proj.scalars()?.iter().enumerate() {
            if value > threshold {
                for (w, &c) in witness.iter_mut().zip(x.point(pos)) {
                    *w = *w + c;
                }
                count += 1;
            }
        }
        for w in witness.iter_mut() {
            *w = *w / T::of_usize(count.max(1));
        }
        Ok((offset, witness))
    };

    let dirs = direction_set::<T>(dim, count);
    let mut halfspaces = Vec::with_capacity(dirs.len());
    let mut witnesses: Vec<Vec<T>> = Vec::with_capacity(dirs.len());
    for u in &dirs {
        let (offset, witness) = support_of(u)?;
        halfspaces.push(Halfspace {
            normal: u.clone(),
            offset,
        });
        witnesses.push(witness);
    }

    let mut result = Polytope::from_halfspaces(dim, halfspaces.clone())?;
    if dim >= 2 && dim <= 3 {
        let probe_trigger = params.delta / T::of_f64(2.0);
        let cut_slack = params.delta / T::of_f64(4.0);
        const MAX_ROUNDS: usize = 16;
        const MAX_EXTRA: usize = 1024;
        let mut extra = 0usize;
        'rounds: for _ in 0..MAX_ROUNDS {
            let Some(vertices) = result.vertices().map(<[Vec<T>]>::to_vec) else {
                break; // empty intersection
            };
            let mut added = 0usize;
            for v in &vertices {
                if extra >= MAX_EXTRA {
                    break 'rounds;
                }
                // Direction in which the vertex sticks out of the witness
                // scaffold; spurious sampling bumps protrude along it, so
                // probe the support evidence there.
                let toward = crate::geometry::min_norm_offset(v, &witnesses)?;
                let bump = crate::scalar::norm2(&toward);
                if !(bump > probe_trigger) {
                    continue;
                }
                let unit: Vec<T> = toward.iter().map(|&c| -c / bump).collect();
                let (evidence, witness) = support_of(&unit)?;
                if crate::scalar::dot(&unit, v) > evidence + cut_slack {
                    halfspaces.push(Halfspace {
                        normal: unit,
                        offset: evidence,
                    });
                    witnesses.push(witness);
                    added += 1;
                    extra += 1;
                }
            }
            if added == 0 {
                break;
            }
            result = Polytope::from_halfspaces(dim, halfspaces.clone())?;
        }
    }

    Ok(CoreReport {
        model: model.name().to_string(),
        construction: Construction::Support,
        result,
        scale: x.scale(),
        directions_used: halfspaces.len(),
        params: params.clone(),
    })
}

/// Cluster-hull core: convex hull of the estimated cluster set. An empty
/// cluster set yields the explicit empty polytope.
pub fn core_by_cluster_hull<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    params: &CoreParams<T>,
) -> Result<CoreReport<T>> {
    check_bound(x, model, params)?;
    let mut cp = params.cluster_params();
    cp.bound = None;
    let clusters = estimate_clusters(x, model, &cp)?;
    let result = Polytope::from_points(x.dim(), &clusters.points)?;
    Ok(CoreReport {
        model: model.name().to_string(),
        construction: Construction::ClusterHull,
        result,
        scale: x.scale(),
        directions_used: 0,
        params: params.clone(),
    })
}

/// The ball side of the Euclidean characterization: finitely many centers
/// `y` with radii `max Γ` of the distance sequences `‖x_n − y‖`.
#[derive(Clone, Debug)]
pub struct BallCharacterization<T> {
    pub centers: Vec<Vec<T>>,
    pub radii: Vec<T>,
    pub delta: T,
}

impl<T: Real> BallCharacterization<T> {
    /// Membership test. `false` certifies exclusion (some ball misses `p` by
    /// more than the slack); `true` is sound only up to the center sample.
    pub fn contains(&self, p: &[T]) -> bool {
        self.contains_with(p, self.delta)
    }

    /// Membership with an explicit additive slack on every radius.
    pub fn contains_with(&self, p: &[T], slack: T) -> bool {
        self.centers
            .iter()
            .zip(&self.radii)
            .all(|(y, &r)| dist2(p, y) <= r + slack)
    }

    /// A center witnessing exclusion, if any.
    pub fn witness(&self, p: &[T]) -> Option<(Vec<T>, T)> {
        self.centers
            .iter()
            .zip(&self.radii)
            .find(|(y, &r)| dist2(p, y) > r + self.delta)
            .map(|(y, &r)| (y.clone(), r))
    }
}

/// Deterministic center sample: strided window points, hull vertices of a
/// window subsample, and far outward offsets.
///
/// Far centers sharpen exclusion: the ball radius at distance Z tracks the
/// supporting halfspace offset up to curvature of order diam²/Z. Exclusion
/// direction matters though. Outside an edge or a vertex of the core the
/// support stays pinned to the contact set, so a coarse ring of directions
/// resolves those; outside a flat face the excess decays linearly with the
/// angular miss, so the far set also walks the face normals of the data
/// hull and the arcs between adjacent face normals.
pub fn ball_characterization<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    params: &CoreParams<T>,
) -> Result<BallCharacterization<T>> {
    check_bound(x, model, params)?;
    let dim = x.dim();
    let budget = params.centers.max(4 * dim);
    let lp = params.limit_params();

    let mut centers: Vec<Vec<T>> = Vec::new();

    // Strided window points.
    let take = (budget / 2).max(1);
    let stride = (x.len() / take).max(1);
    for pos in (0..x.len()).step_by(stride) {
        centers.push(x.point(pos).to_vec());
    }

    // Hull of a strided subsample: vertex centers plus the outward normal
    // directions of its faces.
    let mut normals: Vec<Vec<T>> = Vec::new();
    if dim >= 2 && dim <= 3 {
        let sub_stride = (x.len() / 2048).max(1);
        let sample: Vec<Vec<T>> = (0..x.len())
            .step_by(sub_stride)
            .map(|pos| x.point(pos).to_vec())
            .collect();
        if let Ok(hull) = convex_hull(dim, &sample) {
            let touch_tol = T::of_f64(1e-9)
                * hull
                    .vertices
                    .iter()
                    .flatten()
                    .fold(T::one(), |acc, &v| acc.max(v.abs()));
            // Arcs between normals of faces sharing an edge (3D) or a
            // vertex (2D), stepped finely enough for shell-sharp exclusion.
            let faces: Vec<(&crate::geometry::Halfspace<T>, Vec<usize>)> = hull
                .halfspaces
                .iter()
                .map(|h| {
                    let touching = hull
                        .vertices
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| (h.excess(v)).abs() <= touch_tol)
                        .map(|(i, _)| i)
                        .collect();
                    (h, touching)
                })
                .collect();
            for (h, _) in &faces {
                normals.push(h.normal.clone());
            }
            let shared_needed = dim - 1;
            for (i, (ha, va)) in faces.iter().enumerate() {
                for (hb, vb) in faces.iter().skip(i + 1) {
                    let shared = va.iter().filter(|j| vb.contains(j)).count();
                    if shared < shared_needed {
                        continue;
                    }
                    let cosang = crate::scalar::dot(&ha.normal, &hb.normal)
                        .min(T::one())
                        .max(-T::one());
                    let angle = cosang.acos();
                    let steps = (angle.approx_f64() / 0.12).ceil() as usize;
                    for s in 1..steps {
                        let t = T::of_usize(s) / T::of_usize(steps);
                        let mut u: Vec<T> = ha
                            .normal
                            .iter()
                            .zip(&hb.normal)
                            .map(|(&a, &b)| a + t * (b - a))
                            .collect();
                        let n = crate::scalar::norm2(&u);
                        if n > T::of_f64(1e-9) {
                            for c in u.iter_mut() {
                                *c = *c / n;
                            }
                            normals.push(u);
                        }
                    }
                }
            }
            centers.extend(hull.vertices);
        }
    }

    // Far set: data-hull normals plus a quasi-uniform ring.
    let (lo, hi) = x.bounding_box();
    let center0: Vec<T> = lo
        .iter()
        .zip(&hi)
        .map(|(&a, &b)| (a + b) / T::of_f64(2.0))
        .collect();
    let circumradius = lo
        .iter()
        .zip(&hi)
        .map(|(&a, &b)| (b - a) / T::of_f64(2.0))
        .fold(T::zero(), |acc, v| acc + v * v)
        .sqrt();
    let ring = T::of_f64(1024.0) * circumradius.max(T::one());
    let ring_count = match dim {
        1 => 2,
        2 => budget.max(256),
        _ => budget.max(256),
    };
    normals.extend(direction_set::<T>(dim, ring_count));
    const MAX_CENTERS: usize = 4096;
    for u in normals {
        if centers.len() >= MAX_CENTERS {
            break;
        }
        let y: Vec<T> = center0
            .iter()
            .zip(&u)
            .map(|(&c, &uj)| c + ring * uj)
            .collect();
        centers.push(y);
    }

    let mut radii = Vec::with_capacity(centers.len());
    for y in &centers {
        let dists = x.distances_from(y)?;
        radii.push(ideal_limsup(&dists, model, &lp)?);
    }
    Ok(BallCharacterization {
        centers,
        radii,
        delta: params.delta,
    })
}

/// One-shot ball membership of a single point.
pub fn core_membership_by_balls<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    p: &[T],
    params: &CoreParams<T>,
) -> Result<bool> {
    if p.len() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: p.len(),
        });
    }
    Ok(ball_characterization(x, model, params)?.contains(p))
}

/// Ideal convergence via the singleton-core criterion: the support core
/// must have diameter at most `tol`; the limit is the coordinatewise
/// midpoint of its bounding box.
pub fn is_ideal_convergent<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    tol: T,
    params: &CoreParams<T>,
) -> Result<Option<Vec<T>>> {
    if !(tol > T::zero()) {
        return Err(Error::parameter("tol", "must be positive"));
    }
    let report = core_by_support(x, model, params)?;
    match report.result.diameter() {
        Some(d) if d <= tol => Ok(report.result.center()),
        _ => Ok(None),
    }
}

/// Vector-level boundedness helper shared with callers that need the norm
/// window (re-exported for symmetry with the scalar module).
pub fn window_norms<T: Real>(x: &SequenceWindow<T>) -> Vec<T> {
    x.points().map(norm2).collect()
}
