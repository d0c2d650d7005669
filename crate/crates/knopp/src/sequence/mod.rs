//! Indexed finite windows of single and double sequences in `R^k`.

mod csv;
mod generate;

pub use csv::{ingest_csv, write_csv};
pub use generate::{generate, parse_generator, GeneratorSpec};

use crate::error::{Error, Result};
use crate::ideal::{Arity, IndexSet};
use crate::scalar::{dist2, Real};

/// Window extent: the first `N` terms of a single sequence, or the square
/// `[1, M]^2` of a double sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Single { n: usize },
    Double { m: usize },
}

impl Scale {
    pub fn arity(self) -> Arity {
        match self {
            Scale::Single { .. } => Arity::Single,
            Scale::Double { .. } => Arity::Double,
        }
    }

    /// Number of stored points.
    pub fn count(self) -> usize {
        match self {
            Scale::Single { n } => n,
            Scale::Double { m } => m * m,
        }
    }

    /// The scale number handed to smallness models.
    pub fn bound(self) -> usize {
        match self {
            Scale::Single { n } => n,
            Scale::Double { m } => m,
        }
    }
}

/// A finite window of a sequence in `R^k`: complete 1-based indices, every
/// coordinate finite. Double windows are stored row-major, position
/// `(n-1)·M + (m-1)` holding the term at `(n, m)`.
#[derive(Clone, Debug)]
pub struct SequenceWindow<T> {
    dim: usize,
    scale: Scale,
    values: Vec<T>,
    source: String,
}

impl<T: Real> SequenceWindow<T> {
    /// Build a window from row-major point data.
    pub fn new(dim: usize, scale: Scale, values: Vec<T>, source: impl Into<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::parameter("dim", "must be at least 1"));
        }
        if scale.count() == 0 {
            return Err(Error::parameter("scale", "window must be nonempty"));
        }
        if values.len() != dim * scale.count() {
            return Err(Error::DimensionMismatch {
                expected: dim * scale.count(),
                got: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::parameter(
                "values",
                format!("non-finite coordinate at point {}", pos / dim + 1),
            ));
        }
        Ok(SequenceWindow {
            dim,
            scale,
            values,
            source: source.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.scale.count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Point at 0-based storage position.
    pub fn point(&self, pos: usize) -> &[T] {
        &self.values[pos * self.dim..(pos + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[T]> {
        self.values.chunks_exact(self.dim)
    }

    /// The scalar values of a one-dimensional window.
    pub fn scalars(&self) -> Result<&[T]> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim,
            });
        }
        Ok(&self.values)
    }

    /// Native index (1-based) of a storage position.
    fn native_single(&self, pos: usize) -> usize {
        pos + 1
    }

    fn native_pair(&self, pos: usize, m: usize) -> (usize, usize) {
        (pos / m + 1, pos % m + 1)
    }

    /// The index set of points whose value satisfies `pred`, in the window's
    /// native index space, as an explicit list.
    pub fn hit_set(&self, mut pred: impl FnMut(&[T]) -> bool) -> IndexSet {
        match self.scale {
            Scale::Single { .. } => IndexSet::from_singles(
                self.points()
                    .enumerate()
                    .filter(|(_, p)| pred(p))
                    .map(|(pos, _)| self.native_single(pos))
                    .collect(),
            ),
            Scale::Double { m } => IndexSet::from_pairs(
                self.points()
                    .enumerate()
                    .filter(|(_, p)| pred(p))
                    .map(|(pos, _)| self.native_pair(pos, m))
                    .collect(),
            ),
        }
    }

    /// Scalar window of projections `<u, x>` (same indexing).
    pub fn project(&self, u: &[T]) -> Result<SequenceWindow<T>> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.len(),
            });
        }
        let values = self
            .points()
            .map(|p| crate::scalar::dot(u, p))
            .collect();
        SequenceWindow::new(
            1,
            self.scale,
            values,
            format!("{}|proj", self.source),
        )
    }

    /// Scalar window of Euclidean distances `‖x - y‖` (same indexing).
    pub fn distances_from(&self, y: &[T]) -> Result<SequenceWindow<T>> {
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        let values = self.points().map(|p| dist2(p, y)).collect();
        SequenceWindow::new(1, self.scale, values, format!("{}|dist", self.source))
    }

    /// Window with every value negated.
    pub fn negated(&self) -> SequenceWindow<T> {
        SequenceWindow {
            dim: self.dim,
            scale: self.scale,
            values: self.values.iter().map(|&v| -v).collect(),
            source: format!("{}|neg", self.source),
        }
    }

    /// Componentwise bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<T>, Vec<T>) {
        let mut lo = self.point(0).to_vec();
        let mut hi = lo.clone();
        for p in self.points() {
            for j in 0..self.dim {
                lo[j] = lo[j].min(p[j]);
                hi[j] = hi[j].max(p[j]);
            }
        }
        (lo, hi)
    }

    /// Copy with the value at the given storage positions shifted by the
    /// corresponding offsets. Used to build perturbed variants of a window.
    pub fn perturbed(&self, shifts: &[(usize, Vec<T>)], source_tag: &str) -> Result<SequenceWindow<T>> {
        let mut values = self.values.clone();
        for (pos, delta) in shifts {
            if *pos >= self.len() {
                return Err(Error::parameter("shifts", format!("position {pos} out of window")));
            }
            if delta.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: delta.len(),
                });
            }
            for j in 0..self.dim {
                values[pos * self.dim + j] = values[pos * self.dim + j] + delta[j];
            }
        }
        SequenceWindow::new(
            self.dim,
            self.scale,
            values,
            format!("{}|{}", self.source, source_tag),
        )
    }

    /// Storage position of a native index.
    pub fn position_of_single(&self, n: usize) -> Option<usize> {
        match self.scale {
            Scale::Single { n: len } if n >= 1 && n <= len => Some(n - 1),
            _ => None,
        }
    }

    pub fn position_of_pair(&self, n: usize, m_idx: usize) -> Option<usize> {
        match self.scale {
            Scale::Double { m } if n >= 1 && n <= m && m_idx >= 1 && m_idx <= m => {
                Some((n - 1) * m + (m_idx - 1))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_validates_inputs() {
        assert!(SequenceWindow::<f64>::new(1, Scale::Single { n: 2 }, vec![1.0], "t").is_err());
        assert!(
            SequenceWindow::<f64>::new(1, Scale::Single { n: 2 }, vec![1.0, f64::NAN], "t")
                .is_err()
        );
        assert!(SequenceWindow::<f64>::new(0, Scale::Single { n: 2 }, vec![], "t").is_err());
        let w = SequenceWindow::new(2, Scale::Single { n: 2 }, vec![0.0, 1.0, 2.0, 3.0], "t")
            .unwrap();
        assert_eq!(w.point(1), &[2.0, 3.0]);
    }

    #[test]
    fn double_window_indexing_is_row_major() {
        let m = 3;
        let values: Vec<f64> = (0..9).map(|i| i as f64).collect();
        let w = SequenceWindow::new(1, Scale::Double { m }, values, "t").unwrap();
        assert_eq!(w.position_of_pair(2, 3), Some(5));
        let hits = w.hit_set(|p| p[0] >= 7.0);
        assert!(hits.contains_pair(3, 2));
        assert!(hits.contains_pair(3, 3));
        assert!(!hits.contains_pair(1, 1));
    }

    #[test]
    fn projection_and_distances() {
        let w = SequenceWindow::new(
            2,
            Scale::Single { n: 2 },
            vec![1.0, 0.0, 0.0, 1.0],
            "t",
        )
        .unwrap();
        let p = w.project(&[1.0, 1.0]).unwrap();
        assert_eq!(p.scalars().unwrap(), &[1.0, 1.0]);
        let d = w.distances_from(&[0.0, 0.0]).unwrap();
        assert_eq!(d.scalars().unwrap(), &[1.0, 1.0]);
        assert!(w.project(&[1.0]).is_err());
    }
}
