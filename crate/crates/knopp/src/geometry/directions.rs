//! Deterministic quasi-uniform direction sets on the unit sphere.

use crate::scalar::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// At least `count` unit directions spanning `S^{k-1}`, deterministically:
/// `±1` for k = 1, equally spaced angles for k = 2, a Fibonacci sphere for
/// k = 3 and seeded Gaussian directions plus the axis pairs above that.
pub fn direction_set<T: Real>(dim: usize, count: usize) -> Vec<Vec<T>> {
    assert!(dim >= 1, "directions need a positive dimension");
    match dim {
        1 => vec![vec![T::one()], vec![-T::one()]],
        2 => {
            let n = count.max(4);
            (0..n)
                .map(|j| {
                    let theta = std::f64::consts::TAU * j as f64 / n as f64;
                    vec![T::of_f64(theta.cos()), T::of_f64(theta.sin())]
                })
                .collect()
        }
        3 => {
            let n = count.max(6);
            let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
            (0..n)
                .map(|i| {
                    let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden * i as f64;
                    vec![
                        T::of_f64(r * phi.cos()),
                        T::of_f64(r * phi.sin()),
                        T::of_f64(z),
                    ]
                })
                .collect()
        }
        _ => {
            let mut dirs: Vec<Vec<T>> = Vec::new();
            for j in 0..dim {
                for s in [1.0, -1.0] {
                    let mut e = vec![T::zero(); dim];
                    e[j] = T::of_f64(s);
                    dirs.push(e);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            while dirs.len() < count.max(2 * dim) {
                // Box-Muller pairs give an isotropic Gaussian sample.
                let mut v = Vec::with_capacity(dim);
                while v.len() < dim {
                    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                    let r = (-2.0 * u1.ln()).sqrt();
                    v.push(r * u2.cos());
                    if v.len() < dim {
                        v.push(r * u2.sin());
                    }
                }
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-9 {
                    dirs.push(v.into_iter().map(|x| T::of_f64(x / norm)).collect());
                }
            }
            dirs
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{dot, norm2};

    #[test]
    fn directions_are_unit_and_deterministic() {
        for dim in 1..=5 {
            let a = direction_set::<f64>(dim, 64 * dim);
            let b = direction_set::<f64>(dim, 64 * dim);
            assert_eq!(a, b);
            assert!(a.len() >= 2 * dim.min(2));
            for u in &a {
                assert!((norm2(u) - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn directions_span_all_orthants() {
        // Every axis direction has a sampled direction within 45 degrees.
        for dim in 2..=3 {
            let dirs = direction_set::<f64>(dim, 64 * dim);
            for j in 0..dim {
                for s in [1.0, -1.0] {
                    let mut e = vec![0.0; dim];
                    e[j] = s;
                    let best = dirs
                        .iter()
                        .map(|u| dot(u, &e))
                        .fold(f64::MIN, f64::max);
                    assert!(best > 0.7, "axis {j} sign {s} badly covered: {best}");
                }
            }
        }
    }
}
