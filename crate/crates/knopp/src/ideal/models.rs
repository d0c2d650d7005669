//! Built-in scale-indexed smallness models.

use super::index_set::{Arity, IndexSet};
use crate::error::{Error, Result};

/// A computable finite-scale verdict of "this index set is negligible",
/// standing in for an ideal on the positive integers (or on pairs).
///
/// All built-in models are monotone (subsets of small sets are small), call
/// the empty set small, and refuse the full window, mirroring a proper ideal
/// containing the finite sets.
#[derive(Clone, Debug)]
pub struct FiniteIdealModel {
    name: String,
    kind: ModelKind,
}

#[derive(Clone, Debug)]
enum ModelKind {
    /// Small iff the set misses the tail window `(⌈N/2⌉, N]`.
    Fin,
    /// Small iff the density on the burn-in-trimmed window `(⌈N/10⌉, N]`
    /// stays below `theta`.
    DensityZero { theta: f64 },
    /// Small iff the set avoids the corner window `[⌈theta_p·M⌉, M]^2`
    /// (i.e. lives in the L-shaped border of horizontal/vertical lines).
    Pringsheim { theta_p: f64 },
    /// Small iff the uniform density on the corner window `[⌈M/10⌉, M]^2`
    /// stays below `theta`.
    DoubleDensity { theta: f64 },
    /// Fubini product: small iff the rows whose sections are not
    /// column-small form a row-small set.
    Product {
        rows: Box<FiniteIdealModel>,
        cols: Box<FiniteIdealModel>,
    },
    /// Small iff the transposed set is small under the inner model.
    Transpose { inner: Box<FiniteIdealModel> },
}

/// Smallness model of the finite-set ideal.
pub fn make_fin() -> FiniteIdealModel {
    FiniteIdealModel {
        name: "fin".to_string(),
        kind: ModelKind::Fin,
    }
}

/// Smallness model of the asymptotic-density-zero ideal.
pub fn make_density_zero(theta: f64) -> Result<FiniteIdealModel> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::parameter(
            "theta",
            format!("must lie in (0, 1), got {theta}"),
        ));
    }
    Ok(FiniteIdealModel {
        name: format!("density({theta})"),
        kind: ModelKind::DensityZero { theta },
    })
}

/// Smallness model of the Pringsheim ideal (generated by horizontal and
/// vertical lines).
pub fn make_pringsheim(theta_p: f64) -> Result<FiniteIdealModel> {
    if !(theta_p > 0.0 && theta_p < 0.5) {
        return Err(Error::parameter(
            "theta_p",
            format!("must lie in (0, 1/2), got {theta_p}"),
        ));
    }
    Ok(FiniteIdealModel {
        name: format!("pringsheim({theta_p})"),
        kind: ModelKind::Pringsheim { theta_p },
    })
}

/// Smallness model of the double-density-zero ideal (statistical convergence
/// of double sequences).
pub fn make_double_density(theta: f64) -> Result<FiniteIdealModel> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::parameter(
            "theta",
            format!("must lie in (0, 1), got {theta}"),
        ));
    }
    Ok(FiniteIdealModel {
        name: format!("double-density({theta})"),
        kind: ModelKind::DoubleDensity { theta },
    })
}

/// Fubini product of two single-index models: a pair set is small iff the
/// set of rows whose sections are not `cols`-small is `rows`-small.
pub fn fubini_product(
    rows: FiniteIdealModel,
    cols: FiniteIdealModel,
) -> Result<FiniteIdealModel> {
    for (side, m) in [("left", &rows), ("right", &cols)] {
        if m.arity() != Arity::Single {
            return Err(Error::parameter(
                "product",
                format!("{side} factor `{}` must be single-indexed", m.name()),
            ));
        }
    }
    Ok(FiniteIdealModel {
        name: format!("product({},{})", rows.name, cols.name),
        kind: ModelKind::Product {
            rows: Box::new(rows),
            cols: Box::new(cols),
        },
    })
}

/// Transpose of a double-index model.
pub fn transpose(inner: FiniteIdealModel) -> Result<FiniteIdealModel> {
    if inner.arity() != Arity::Double {
        return Err(Error::parameter(
            "transpose",
            format!("inner model `{}` must be double-indexed", inner.name()),
        ));
    }
    Ok(FiniteIdealModel {
        name: format!("transpose({})", inner.name),
        kind: ModelKind::Transpose {
            inner: Box::new(inner),
        },
    })
}

/// The e-convergence ideal: transpose of the Fubini product Fin x Fin.
pub fn make_e_ideal() -> FiniteIdealModel {
    transpose(fubini_product(make_fin(), make_fin()).expect("fin factors are single"))
        .expect("product is double")
}

impl FiniteIdealModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> Arity {
        match &self.kind {
            ModelKind::Fin | ModelKind::DensityZero { .. } => Arity::Single,
            ModelKind::Pringsheim { .. }
            | ModelKind::DoubleDensity { .. }
            | ModelKind::Product { .. }
            | ModelKind::Transpose { .. } => Arity::Double,
        }
    }

    /// The smallness verdict for `set` at scale `N` (window `[1, N]`) or `M`
    /// (window `[1, M]^2`).
    pub fn is_small(&self, set: &IndexSet, scale: usize) -> Result<bool> {
        if scale == 0 {
            return Err(Error::parameter("scale", "must be at least 1"));
        }
        if set.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                model: self.name.clone(),
                expected: self.arity().label(),
                got: set.arity().label(),
            });
        }
        Ok(self.is_small_unchecked(set, scale))
    }

    fn is_small_unchecked(&self, set: &IndexSet, scale: usize) -> bool {
        match &self.kind {
            ModelKind::Fin => {
                let lo = scale.div_ceil(2) + 1;
                !set.hits_range(lo, scale)
            }
            ModelKind::DensityZero { theta } => {
                let burn_in = scale.div_ceil(10);
                let len = scale - burn_in;
                if len == 0 {
                    return set.count_in_range(1, scale) == 0;
                }
                let count = set.count_in_range(burn_in + 1, scale);
                (count as f64) < theta * (len as f64)
            }
            ModelKind::Pringsheim { theta_p } => {
                // Guarded ceiling: products like 0.1 * 30 land a few ulps
                // above the exact value and must not bump the border.
                let b = (((theta_p * scale as f64) - 1e-9).ceil() as usize).max(1);
                !set.hits_box(b, scale)
            }
            ModelKind::DoubleDensity { theta } => {
                let b = scale.div_ceil(10).max(1);
                let side = scale - b + 1;
                let count = set.count_in_box(b, scale);
                (count as f64) < theta * (side as f64) * (side as f64)
            }
            ModelKind::Product { rows, cols } => {
                // Absent rows have empty sections, which every model calls
                // small, so only occupied rows can fail.
                let failing: Vec<usize> = match set.grouped_rows() {
                    Some(grouped) => grouped
                        .into_iter()
                        .filter(|(k, section)| {
                            *k <= scale && !cols.is_small_unchecked(section, scale)
                        })
                        .map(|(k, _)| k)
                        .collect(),
                    None => (1..=scale)
                        .filter(|&k| !cols.is_small_unchecked(&set.row_section(k), scale))
                        .collect(),
                };
                rows.is_small_unchecked(&IndexSet::from_singles(failing), scale)
            }
            ModelKind::Transpose { inner } => inner.is_small_unchecked(&set.transpose(), scale),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_single(n: usize) -> IndexSet {
        IndexSet::from_singles((1..=n).collect())
    }

    fn full_double(m: usize) -> IndexSet {
        let mut v = Vec::new();
        for n in 1..=m {
            for k in 1..=m {
                v.push((n, k));
            }
        }
        IndexSet::from_pairs(v)
    }

    #[test]
    fn fin_examples() {
        let fin = make_fin();
        let bounded = IndexSet::from_singles(vec![1, 2, 3]);
        assert!(fin.is_small(&bounded, 100).unwrap());
        let evens = IndexSet::from_single_pred(|n| n % 2 == 0);
        assert!(!fin.is_small(&evens, 100).unwrap());
        assert!(!fin.is_small(&full_single(100), 100).unwrap());
        assert!(fin.is_small(&IndexSet::empty_single(), 100).unwrap());
    }

    #[test]
    fn density_examples() {
        let z = make_density_zero(0.05).unwrap();
        let n = 10_000usize;
        let squares = IndexSet::from_single_pred(|k| {
            let r = (k as f64).sqrt().round() as usize;
            r * r == k
        });
        // Oracle: brute-force count of squares in the trimmed window.
        let burn_in = n.div_ceil(10);
        let count = (burn_in + 1..=n)
            .filter(|&k| {
                let r = (k as f64).sqrt().round() as usize;
                r * r == k
            })
            .count();
        assert!((count as f64) / ((n - burn_in) as f64) < 0.05);
        assert!(z.is_small(&squares, n).unwrap());

        let evens = IndexSet::from_single_pred(|k| k % 2 == 0);
        assert!(!z.is_small(&evens, n).unwrap());
        assert!(z.is_small(&IndexSet::empty_single(), n).unwrap());
        assert!(!z.is_small(&full_single(200), 200).unwrap());
    }

    #[test]
    fn density_theta_validation() {
        assert!(make_density_zero(0.0).is_err());
        assert!(make_density_zero(1.0).is_err());
        assert!(make_density_zero(-0.3).is_err());
        assert!(make_pringsheim(0.5).is_err());
        assert!(make_double_density(2.0).is_err());
    }

    #[test]
    fn pringsheim_examples() {
        let p = make_pringsheim(0.1).unwrap();
        let two_lines = IndexSet::from_pair_pred(|_, m| m <= 2);
        assert!(p.is_small(&two_lines, 100).unwrap());
        let diag = IndexSet::from_pair_pred(|n, m| n == m);
        assert!(!p.is_small(&diag, 100).unwrap());
        assert!(!p.is_small(&full_double(64), 64).unwrap());
        assert!(p.is_small(&IndexSet::empty_double(), 100).unwrap());
    }

    #[test]
    fn double_density_examples() {
        let zp = make_double_density(0.05).unwrap();
        let m = 1000usize;
        let diag = IndexSet::from_pair_pred(|n, k| n == k);
        // Oracle: the corner window holds at most M diagonal points in
        // (M - b + 1)^2 slots.
        let b = m.div_ceil(10);
        let density = ((m - b + 1) as f64) / (((m - b + 1) as f64).powi(2));
        assert!(density < 0.05);
        assert!(zp.is_small(&diag, m).unwrap());
        let even_rows = IndexSet::from_pair_pred(|n, _| n % 2 == 0);
        assert!(!zp.is_small(&even_rows, m).unwrap());
        assert!(zp.is_small(&IndexSet::empty_double(), m).unwrap());
        assert!(!zp.is_small(&full_double(64), 64).unwrap());
    }

    #[test]
    fn fubini_examples() {
        let ff = fubini_product(make_fin(), make_fin()).unwrap();
        let m = 64usize;
        let first_col = IndexSet::from_pair_pred(|_, k| k == 1);
        assert!(ff.is_small(&first_col, m).unwrap());
        // Every row section {k : k >= n} is cofinite, so every row fails.
        let upper = IndexSet::from_pair_pred(|n, k| k >= n);
        assert!(!ff.is_small(&upper, m).unwrap());
        assert!(ff.is_small(&IndexSet::empty_double(), m).unwrap());
        assert!(!ff.is_small(&full_double(m), m).unwrap());

        // Same verdicts when the set is handed over as an explicit list.
        let mut first_col_list = Vec::new();
        let mut upper_list = Vec::new();
        for n in 1..=m {
            first_col_list.push((n, 1));
            for k in n..=m {
                upper_list.push((n, k));
            }
        }
        assert!(ff.is_small(&IndexSet::from_pairs(first_col_list), m).unwrap());
        assert!(!ff.is_small(&IndexSet::from_pairs(upper_list), m).unwrap());
    }

    #[test]
    fn transpose_examples() {
        let e = make_e_ideal();
        let m = 64usize;
        let first_row_t = IndexSet::from_pair_pred(|n, _| n == 1);
        assert!(e.is_small(&first_row_t, m).unwrap());
        assert!(e.is_small(&IndexSet::empty_double(), m).unwrap());
        assert!(!e.is_small(&full_double(m), m).unwrap());
    }

    #[test]
    fn arity_mismatch_rejected() {
        let fin = make_fin();
        let pairs = IndexSet::empty_double();
        assert!(matches!(
            fin.is_small(&pairs, 10),
            Err(Error::ArityMismatch { .. })
        ));
        let p = make_pringsheim(0.1).unwrap();
        assert!(p.is_small(&IndexSet::empty_single(), 10).is_err());
        assert!(fubini_product(make_fin(), make_pringsheim(0.1).unwrap()).is_err());
        assert!(transpose(make_fin()).is_err());
    }
}
