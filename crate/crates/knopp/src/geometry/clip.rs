//! Vertex enumeration of bounded halfspace intersections for `k <= 3`,
//! by clipping a generous bounding box against each halfspace.

use super::polytope::Halfspace;
use crate::error::{Error, Result};
use crate::scalar::{dot, Real};

/// Vertices of `∩ {z : <normal, z> <= offset}` for ambient dimension `<= 3`.
/// Returns an empty vector when the intersection is empty. The intersection
/// is assumed bounded (the halfspace families built by the core
/// constructions always span all directions); if a starting box ever turns
/// out too small it is enlarged and the clip rerun.
///
/// Positions are resolved to roughly `1e-5` relative accuracy: offsets are
/// inflated by a tangency slack and nearby outputs merged (exact clips of
/// exactly tangent planes are hopeless in floats). One dimension is handled
/// exactly.
pub fn intersect_halfspaces<T: Real>(
    dim: usize,
    halfspaces: &[Halfspace<T>],
) -> Result<Vec<Vec<T>>> {
    if dim == 0 || dim > 3 {
        return Err(Error::parameter(
            "dim",
            format!("halfspace vertex enumeration supports 1 <= k <= 3, got {dim}"),
        ));
    }
    if let Some(bad) = halfspaces.iter().find(|h| h.normal.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bad.normal.len(),
        });
    }
    if dim == 1 {
        return Ok(interval(halfspaces));
    }

    let max_offset = halfspaces
        .iter()
        .map(|h| h.offset.abs())
        .fold(T::one(), T::max);
    // Exactly tangent planes (offsets sitting on the body, the common case
    // for support data of atomic windows) make the sequential clip graze
    // vertices and silently sever regions; a uniform hair of slack keeps
    // every cut transversal. The caller's canonicalization recomputes
    // supporting halfspaces of the final vertex set, so the inflation never
    // leaks into reported offsets.
    let slack = T::of_f64(1e-6) * max_offset.max(T::one());
    let inflated: Vec<Halfspace<T>> = halfspaces
        .iter()
        .map(|h| Halfspace {
            normal: h.normal.clone(),
            offset: h.offset + slack,
        })
        .collect();
    let halfspaces = &inflated[..];
    // Tangency slack leaves micro-facets of that scale around would-be
    // vertices; merge them away so downstream hulls see a clean cloud.
    let merge_tol = slack * T::of_f64(16.0);
    let mut radius = T::of_f64(4.0) * (T::one() + max_offset);
    for _ in 0..4 {
        let mut verts = match dim {
            2 => clip_polygon_run(halfspaces, radius),
            _ => clip_polytope_run(halfspaces, radius),
        };
        dedupe_close(&mut verts, merge_tol);
        let touches_box = verts
            .iter()
            .flatten()
            .any(|&c| c.abs() >= radius * T::of_f64(1.0 - 1e-6));
        if !touches_box {
            return Ok(verts);
        }
        radius = radius * T::of_f64(16.0);
    }
    let mut verts = match dim {
        2 => clip_polygon_run(halfspaces, radius),
        _ => clip_polytope_run(halfspaces, radius),
    };
    dedupe_close(&mut verts, merge_tol);
    Ok(verts)
}

fn interval<T: Real>(halfspaces: &[Halfspace<T>]) -> Vec<Vec<T>> {
    let mut lo = T::neg_infinity();
    let mut hi = T::infinity();
    for h in halfspaces {
        let u = h.normal[0];
        if u > T::zero() {
            hi = hi.min(h.offset / u);
        } else if u < T::zero() {
            lo = lo.max(h.offset / u);
        } else if h.offset < T::zero() {
            return Vec::new();
        }
    }
    if lo > hi || lo.is_infinite() || hi.is_infinite() {
        return Vec::new();
    }
    if hi - lo <= T::of_f64(1e-15) {
        vec![vec![lo]]
    } else {
        vec![vec![lo], vec![hi]]
    }
}

fn box_polygon<T: Real>(radius: T) -> Vec<Vec<T>> {
    let r = radius;
    vec![
        vec![-r, -r],
        vec![r, -r],
        vec![r, r],
        vec![-r, r],
    ]
}

/// Sutherland-Hodgman clip of a polygon loop; also reports the crossing
/// points generated on the cut plane.
fn clip_loop<T: Real>(
    polygon: &[Vec<T>],
    h: &Halfspace<T>,
    tol: T,
) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let mut kept = Vec::new();
    let mut cuts = Vec::new();
    let r = polygon.len();
    for i in 0..r {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % r];
        let da = h.offset - dot(&h.normal, a);
        let db = h.offset - dot(&h.normal, b);
        if da >= -tol {
            kept.push(a.clone());
        }
        if (da > tol && db < -tol) || (da < -tol && db > tol) {
            let t = da / (da - db);
            let p: Vec<T> = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| x + t * (y - x))
                .collect();
            kept.push(p.clone());
            cuts.push(p);
        }
    }
    (kept, cuts)
}

fn dedupe_close<T: Real>(points: &mut Vec<Vec<T>>, tol: T) {
    let mut out: Vec<Vec<T>> = Vec::new();
    for p in points.drain(..) {
        if !out
            .iter()
            .any(|q| crate::scalar::dist_inf(q, &p) <= tol)
        {
            out.push(p);
        }
    }
    *points = out;
}

fn clip_polygon_run<T: Real>(halfspaces: &[Halfspace<T>], radius: T) -> Vec<Vec<T>> {
    let tol = T::of_f64(1e-12) * radius;
    let mut polygon = box_polygon(radius);
    for h in halfspaces {
        if polygon.is_empty() {
            break;
        }
        let (kept, _) = clip_loop(&polygon, h, tol);
        polygon = kept;
        dedupe_close(&mut polygon, tol);
        if polygon.len() < 1 {
            return Vec::new();
        }
    }
    polygon
}

fn box_faces<T: Real>(radius: T) -> Vec<Vec<Vec<T>>> {
    let r = radius;
    let corner = |mask: usize| -> Vec<T> {
        vec![
            if mask & 1 == 0 { -r } else { r },
            if mask & 2 == 0 { -r } else { r },
            if mask & 4 == 0 { -r } else { r },
        ]
    };
    // Each face as a corner loop.
    [
        [0, 1, 3, 2],
        [4, 5, 7, 6],
        [0, 1, 5, 4],
        [2, 3, 7, 6],
        [0, 2, 6, 4],
        [1, 3, 7, 5],
    ]
    .iter()
    .map(|ids| ids.iter().map(|&i| corner(i)).collect())
    .collect()
}

/// Orthonormal in-plane basis for a plane with the given unit normal.
fn plane_basis<T: Real>(normal: &[T]) -> (Vec<T>, Vec<T>) {
    let pick = if normal[0].abs() < T::of_f64(0.9) {
        vec![T::one(), T::zero(), T::zero()]
    } else {
        vec![T::zero(), T::one(), T::zero()]
    };
    let c = dot(&pick, normal);
    let mut e1: Vec<T> = pick
        .iter()
        .zip(normal)
        .map(|(&p, &n)| p - c * n)
        .collect();
    let n1 = crate::scalar::norm2(&e1);
    for v in e1.iter_mut() {
        *v = *v / n1;
    }
    let e2 = vec![
        normal[1] * e1[2] - normal[2] * e1[1],
        normal[2] * e1[0] - normal[0] * e1[2],
        normal[0] * e1[1] - normal[1] * e1[0],
    ];
    (e1, e2)
}

fn clip_polytope_run<T: Real>(halfspaces: &[Halfspace<T>], radius: T) -> Vec<Vec<T>> {
    let tol = T::of_f64(1e-12) * radius;
    let mut faces = box_faces(radius);
    for h in halfspaces {
        if faces.is_empty() {
            break;
        }
        let mut next: Vec<Vec<Vec<T>>> = Vec::new();
        let mut cut_points: Vec<Vec<T>> = Vec::new();
        for face in &faces {
            let (kept, cuts) = clip_loop(face, h, tol);
            let mut kept = kept;
            dedupe_close(&mut kept, tol);
            if kept.len() >= 3 {
                next.push(kept);
            }
            cut_points.extend(cuts);
        }
        dedupe_close(&mut cut_points, tol.max(T::of_f64(1e-10)));
        if cut_points.len() >= 3 {
            // The section of a convex body by a plane is convex; order the
            // crossing points angularly to form the cap face.
            let (e1, e2) = plane_basis(&h.normal);
            let centroid: Vec<T> = (0..3)
                .map(|j| {
                    cut_points
                        .iter()
                        .fold(T::zero(), |acc, p| acc + p[j])
                        / T::of_usize(cut_points.len())
                })
                .collect();
            let mut with_angle: Vec<(T, Vec<T>)> = cut_points
                .into_iter()
                .map(|p| {
                    let d: Vec<T> = p.iter().zip(&centroid).map(|(&a, &b)| a - b).collect();
                    (dot(&d, &e2).atan2(dot(&d, &e1)), p)
                })
                .collect();
            with_angle.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            next.push(with_angle.into_iter().map(|(_, p)| p).collect());
        }
        faces = next;
    }
    let mut verts: Vec<Vec<T>> = faces.into_iter().flatten().collect();
    dedupe_close(&mut verts, tol.max(T::of_f64(1e-10)));
    verts
}
