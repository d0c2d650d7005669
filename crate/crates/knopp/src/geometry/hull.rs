//! Convex hulls with explicit vertex and supporting-halfspace output, for
//! ambient dimension at most 3. Degenerate inputs (points, segments, flat
//! polygons) are detected by affine rank and handled explicitly.

use super::polytope::Halfspace;
use crate::error::{Error, Result};
use crate::scalar::{dot, norm2, Real};

pub struct HullOutput<T> {
    pub vertices: Vec<Vec<T>>,
    pub halfspaces: Vec<Halfspace<T>>,
}

fn coordinate_scale<T: Real>(points: &[Vec<T>]) -> T {
    points
        .iter()
        .flatten()
        .fold(T::one(), |acc, &v| acc.max(v.abs()))
}

/// Orthonormal spanning frame of the affine hull, via Gram-Schmidt.
fn affine_frame<T: Real>(points: &[Vec<T>], tol: T) -> Vec<Vec<T>> {
    let dim = points[0].len();
    let origin = &points[0];
    let mut basis: Vec<Vec<T>> = Vec::new();
    for p in &points[1..] {
        if basis.len() == dim {
            break;
        }
        let mut v: Vec<T> = p.iter().zip(origin.iter()).map(|(&a, &b)| a - b).collect();
        for b in &basis {
            let c = dot(&v, b);
            for (vj, &bj) in v.iter_mut().zip(b.iter()) {
                *vj = *vj - c * bj;
            }
        }
        let n = norm2(&v);
        if n > tol {
            for vj in v.iter_mut() {
                *vj = *vj / n;
            }
            basis.push(v);
        }
    }
    basis
}

fn axis<T: Real>(dim: usize, j: usize) -> Vec<T> {
    let mut e = vec![T::zero(); dim];
    e[j] = T::one();
    e
}

/// Halfspace with the given (non-unit) normal, supporting the vertex set.
fn supporting<T: Real>(normal: &[T], vertices: &[Vec<T>]) -> Halfspace<T> {
    let n = norm2(normal);
    let unit: Vec<T> = normal.iter().map(|&v| v / n).collect();
    let offset = vertices
        .iter()
        .map(|v| dot(&unit, v))
        .fold(T::neg_infinity(), T::max);
    Halfspace {
        normal: unit,
        offset,
    }
}

/// Orthonormal completion of `basis` to the full space.
fn complete_basis<T: Real>(dim: usize, basis: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut extra = Vec::new();
    let mut frame: Vec<Vec<T>> = basis.to_vec();
    for j in 0..dim {
        if frame.len() == dim {
            break;
        }
        let mut v = axis::<T>(dim, j);
        for b in &frame {
            let c = dot(&v, b);
            for (vj, &bj) in v.iter_mut().zip(b.iter()) {
                *vj = *vj - c * bj;
            }
        }
        let n = norm2(&v);
        if n > T::of_f64(1e-6) {
            for vj in v.iter_mut() {
                *vj = *vj / n;
            }
            frame.push(v.clone());
            extra.push(v);
        }
    }
    extra
}

/// Convex hull of a finite point set in `R^k`, `k <= 3`.
pub fn convex_hull<T: Real>(dim: usize, points: &[Vec<T>]) -> Result<HullOutput<T>> {
    if points.is_empty() {
        return Err(Error::EmptyInput {
            what: "hull point set",
        });
    }
    if dim == 0 || dim > 3 {
        return Err(Error::parameter(
            "dim",
            format!("vertex enumeration supports 1 <= k <= 3, got {dim}"),
        ));
    }
    if let Some(bad) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bad.len(),
        });
    }

    let mut pts: Vec<Vec<T>> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();

    let scale = coordinate_scale(&pts);
    let tol = T::of_f64(1e-9) * scale;
    let frame = affine_frame(&pts, tol);

    match frame.len() {
        0 => {
            // A single point; pin it with axis pairs.
            let v = pts[0].clone();
            let mut halfspaces = Vec::new();
            for j in 0..dim {
                let e = axis::<T>(dim, j);
                let neg: Vec<T> = e.iter().map(|&x| -x).collect();
                halfspaces.push(supporting(&e, std::slice::from_ref(&v)));
                halfspaces.push(supporting(&neg, std::slice::from_ref(&v)));
            }
            Ok(HullOutput {
                vertices: vec![v],
                halfspaces,
            })
        }
        1 => {
            let d = &frame[0];
            let lo = pts
                .iter()
                .min_by(|a, b| dot(d, a).partial_cmp(&dot(d, b)).unwrap())
                .unwrap()
                .clone();
            let hi = pts
                .iter()
                .max_by(|a, b| dot(d, a).partial_cmp(&dot(d, b)).unwrap())
                .unwrap()
                .clone();
            let vertices = vec![lo, hi];
            let mut halfspaces = Vec::new();
            let neg: Vec<T> = d.iter().map(|&x| -x).collect();
            halfspaces.push(supporting(d, &vertices));
            halfspaces.push(supporting(&neg, &vertices));
            for e in complete_basis(dim, &frame) {
                let neg: Vec<T> = e.iter().map(|&x| -x).collect();
                halfspaces.push(supporting(&e, &vertices));
                halfspaces.push(supporting(&neg, &vertices));
            }
            Ok(HullOutput {
                vertices,
                halfspaces,
            })
        }
        2 => planar_hull(dim, &pts, &frame),
        _ => full_hull_3d(&pts, tol),
    }
}

/// Rank-2 hull: monotone chain in plane coordinates.
fn planar_hull<T: Real>(dim: usize, pts: &[Vec<T>], frame: &[Vec<T>]) -> Result<HullOutput<T>> {
    let origin = pts[0].clone();
    let coords: Vec<(T, T)> = pts
        .iter()
        .map(|p| {
            let v: Vec<T> = p.iter().zip(&origin).map(|(&a, &b)| a - b).collect();
            (dot(&v, &frame[0]), dot(&v, &frame[1]))
        })
        .collect();
    let chain = monotone_chain(&coords);
    let lift = |&(s, t): &(T, T)| -> Vec<T> {
        (0..dim)
            .map(|j| origin[j] + s * frame[0][j] + t * frame[1][j])
            .collect()
    };
    let vertices: Vec<Vec<T>> = chain.iter().map(lift).collect();

    let mut halfspaces = Vec::new();
    // In-plane edge normals, oriented outward (counter-clockwise chain).
    let r = chain.len();
    for i in 0..r {
        if r < 2 {
            break;
        }
        let (ax, ay) = chain[i];
        let (bx, by) = chain[(i + 1) % r];
        if r == 2 && i == 1 {
            break;
        }
        let (dx, dy) = (bx - ax, by - ay);
        // Outward normal of a CCW edge, expressed in ambient coordinates.
        let plane_normal: Vec<T> = (0..dim)
            .map(|j| dy * frame[0][j] - dx * frame[1][j])
            .collect();
        halfspaces.push(supporting(&plane_normal, &vertices));
        if r == 2 {
            // A segment seen as a flat polygon: add the reverse side.
            let neg: Vec<T> = plane_normal.iter().map(|&x| -x).collect();
            halfspaces.push(supporting(&neg, &vertices));
        }
    }
    // Pin the plane itself when embedded in 3-space.
    for e in complete_basis(dim, frame) {
        let neg: Vec<T> = e.iter().map(|&x| -x).collect();
        halfspaces.push(supporting(&e, &vertices));
        halfspaces.push(supporting(&neg, &vertices));
    }
    Ok(HullOutput {
        vertices,
        halfspaces,
    })
}

fn cross2<T: Real>(o: (T, T), a: (T, T), b: (T, T)) -> T {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise hull of 2D points (Andrew's monotone chain), collinear
/// points dropped.
fn monotone_chain<T: Real>(points: &[(T, T)]) -> Vec<(T, T)> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(T, T)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && !(cross2(lower[lower.len() - 2], lower[lower.len() - 1], p) > T::zero())
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(T, T)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && !(cross2(upper[upper.len() - 2], upper[upper.len() - 1], p) > T::zero())
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn sub3<T: Real>(a: &[T], b: &[T]) -> [T; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Full-dimensional 3D hull by incremental insertion.
fn full_hull_3d<T: Real>(pts: &[Vec<T>], tol: T) -> Result<HullOutput<T>> {
    // Face normal (unnormalized) and signed excess of a point over the face.
    let face_normal = |f: &[usize; 3]| -> [T; 3] {
        let u = sub3(&pts[f[1]], &pts[f[0]]);
        let v = sub3(&pts[f[2]], &pts[f[0]]);
        cross3(u, v)
    };
    let excess = |f: &[usize; 3], p: &[T]| -> T {
        let n = face_normal(f);
        let d = sub3(p, &pts[f[0]]);
        n[0] * d[0] + n[1] * d[1] + n[2] * d[2]
    };

    // Seed tetrahedron: the affine frame guarantees four points in general
    // position exist; take extremes to keep it fat.
    let i0 = 0usize;
    let i1 = (0..pts.len())
        .max_by(|&a, &b| {
            crate::scalar::dist2(&pts[a], &pts[i0])
                .partial_cmp(&crate::scalar::dist2(&pts[b], &pts[i0]))
                .unwrap()
        })
        .unwrap();
    let line = sub3(&pts[i1], &pts[i0]);
    let i2 = (0..pts.len())
        .max_by(|&a, &b| {
            let da = cross3(line, sub3(&pts[a], &pts[i0]));
            let db = cross3(line, sub3(&pts[b], &pts[i0]));
            norm2(&da).partial_cmp(&norm2(&db)).unwrap()
        })
        .unwrap();
    let tri = [i0, i1, i2];
    let i3 = (0..pts.len())
        .max_by(|&a, &b| {
            excess(&tri, &pts[a])
                .abs()
                .partial_cmp(&excess(&tri, &pts[b]).abs())
                .unwrap()
        })
        .unwrap();
    if !(excess(&tri, &pts[i3]).abs() > tol) {
        return Err(Error::parameter(
            "points",
            "rank detection and hull seeding disagree (degenerate input)",
        ));
    }

    let mut faces: Vec<[usize; 3]> = if excess(&tri, &pts[i3]) > T::zero() {
        vec![
            [i0, i2, i1],
            [i0, i1, i3],
            [i1, i2, i3],
            [i2, i0, i3],
        ]
    } else {
        vec![
            [i0, i1, i2],
            [i1, i0, i3],
            [i2, i1, i3],
            [i0, i2, i3],
        ]
    };

    for p in 0..pts.len() {
        if [i0, i1, i2, i3].contains(&p) {
            continue;
        }
        let visible: Vec<usize> = (0..faces.len())
            .filter(|&f| excess(&faces[f], &pts[p]) > tol)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Horizon: directed edges of visible faces whose reverse belongs to
        // no visible face.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &f in &visible {
            let [a, b, c] = faces[f];
            edges.extend([(a, b), (b, c), (c, a)]);
        }
        let horizon: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(a, b)| !edges.contains(&(*b, *a)))
            .cloned()
            .collect();
        let mut keep: Vec<[usize; 3]> = faces
            .iter()
            .enumerate()
            .filter(|(i, _)| !visible.contains(i))
            .map(|(_, f)| *f)
            .collect();
        for (a, b) in horizon {
            keep.push([a, b, p]);
        }
        faces = keep;
    }

    let mut vertex_ids: Vec<usize> = faces.iter().flatten().cloned().collect();
    vertex_ids.sort_unstable();
    vertex_ids.dedup();
    let vertices: Vec<Vec<T>> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();

    // Supporting halfspaces from face normals, coplanar faces merged.
    let mut halfspaces: Vec<Halfspace<T>> = Vec::new();
    for f in &faces {
        let n = face_normal(f);
        let h = supporting(&n, &vertices);
        let dup = halfspaces.iter().any(|g| {
            dot(&g.normal, &h.normal) > T::of_f64(1.0 - 1e-9)
                && (g.offset - h.offset).abs() <= tol.max(T::of_f64(1e-12))
        });
        if !dup {
            halfspaces.push(h);
        }
    }
    Ok(HullOutput {
        vertices,
        halfspaces,
    })
}
