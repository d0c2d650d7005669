//! Finite stand-ins for subsets of the positive integers and of their pairs.

use std::sync::Arc;

/// Whether a set (or smallness model) indexes a single sequence or a double
/// sequence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Arity {
    Single,
    Double,
}

impl Arity {
    pub fn label(self) -> &'static str {
        match self {
            Arity::Single => "single",
            Arity::Double => "double",
        }
    }
}

type SinglePred = Arc<dyn Fn(usize) -> bool + Send + Sync>;
type DoublePred = Arc<dyn Fn(usize, usize) -> bool + Send + Sync>;

/// An index set over `[1, N]` or `[1, M]^2`, given by a membership predicate
/// plus an optional explicit sorted list. Structured sets (lines, diagonals)
/// stay cheap as predicates; hit sets collected from windows carry the
/// explicit list so counting never rescans the window.
#[derive(Clone)]
pub enum IndexSet {
    Single {
        pred: SinglePred,
        explicit: Option<Arc<[usize]>>,
    },
    Double {
        pred: DoublePred,
        explicit: Option<Arc<[(usize, usize)]>>,
    },
}

impl IndexSet {
    pub fn arity(&self) -> Arity {
        match self {
            IndexSet::Single { .. } => Arity::Single,
            IndexSet::Double { .. } => Arity::Double,
        }
    }

    pub fn empty_single() -> Self {
        Self::from_singles(Vec::new())
    }

    pub fn empty_double() -> Self {
        Self::from_pairs(Vec::new())
    }

    /// Explicit single-index set; the list is sorted and deduplicated.
    pub fn from_singles(mut list: Vec<usize>) -> Self {
        list.sort_unstable();
        list.dedup();
        let arc: Arc<[usize]> = list.into();
        let for_pred = Arc::clone(&arc);
        IndexSet::Single {
            pred: Arc::new(move |n| for_pred.binary_search(&n).is_ok()),
            explicit: Some(arc),
        }
    }

    /// Explicit pair set; sorted lexicographically and deduplicated.
    pub fn from_pairs(mut list: Vec<(usize, usize)>) -> Self {
        list.sort_unstable();
        list.dedup();
        let arc: Arc<[(usize, usize)]> = list.into();
        let for_pred = Arc::clone(&arc);
        IndexSet::Double {
            pred: Arc::new(move |n, m| for_pred.binary_search(&(n, m)).is_ok()),
            explicit: Some(arc),
        }
    }

    pub fn from_single_pred(pred: impl Fn(usize) -> bool + Send + Sync + 'static) -> Self {
        IndexSet::Single {
            pred: Arc::new(pred),
            explicit: None,
        }
    }

    pub fn from_pair_pred(pred: impl Fn(usize, usize) -> bool + Send + Sync + 'static) -> Self {
        IndexSet::Double {
            pred: Arc::new(pred),
            explicit: None,
        }
    }

    pub fn contains_single(&self, n: usize) -> bool {
        match self {
            IndexSet::Single { pred, .. } => pred(n),
            IndexSet::Double { .. } => panic!("contains_single on a double set"),
        }
    }

    pub fn contains_pair(&self, n: usize, m: usize) -> bool {
        match self {
            IndexSet::Double { pred, .. } => pred(n, m),
            IndexSet::Single { .. } => panic!("contains_pair on a single set"),
        }
    }

    /// `|A ∩ [lo, hi]|` for a single set (inclusive bounds).
    pub fn count_in_range(&self, lo: usize, hi: usize) -> usize {
        if lo > hi {
            return 0;
        }
        match self {
            IndexSet::Single {
                explicit: Some(list),
                ..
            } => {
                let a = list.partition_point(|&x| x < lo);
                let b = list.partition_point(|&x| x <= hi);
                b - a
            }
            IndexSet::Single { pred, .. } => (lo..=hi).filter(|&n| pred(n)).count(),
            IndexSet::Double { .. } => panic!("count_in_range on a double set"),
        }
    }

    /// Does a single set meet `[lo, hi]`?
    pub fn hits_range(&self, lo: usize, hi: usize) -> bool {
        if lo > hi {
            return false;
        }
        match self {
            IndexSet::Single {
                explicit: Some(list),
                ..
            } => {
                let a = list.partition_point(|&x| x < lo);
                a < list.len() && list[a] <= hi
            }
            IndexSet::Single { pred, .. } => (lo..=hi).any(|n| pred(n)),
            IndexSet::Double { .. } => panic!("hits_range on a double set"),
        }
    }

    /// `|A ∩ [lo, hi]^2|` for a pair set.
    pub fn count_in_box(&self, lo: usize, hi: usize) -> usize {
        if lo > hi {
            return 0;
        }
        match self {
            IndexSet::Double {
                explicit: Some(list),
                ..
            } => list
                .iter()
                .filter(|&&(n, m)| n >= lo && n <= hi && m >= lo && m <= hi)
                .count(),
            IndexSet::Double { pred, .. } => (lo..=hi)
                .map(|n| (lo..=hi).filter(|&m| pred(n, m)).count())
                .sum(),
            IndexSet::Single { .. } => panic!("count_in_box on a single set"),
        }
    }

    /// Does a pair set meet `[lo, hi]^2`?
    pub fn hits_box(&self, lo: usize, hi: usize) -> bool {
        if lo > hi {
            return false;
        }
        match self {
            IndexSet::Double {
                explicit: Some(list),
                ..
            } => list
                .iter()
                .any(|&(n, m)| n >= lo && n <= hi && m >= lo && m <= hi),
            IndexSet::Double { pred, .. } => {
                (lo..=hi).any(|n| (lo..=hi).any(|m| pred(n, m)))
            }
            IndexSet::Single { .. } => panic!("hits_box on a single set"),
        }
    }

    /// Row section `A_k = {m : (k, m) ∈ A}` of a pair set, as a single set.
    pub fn row_section(&self, k: usize) -> IndexSet {
        match self {
            IndexSet::Double {
                explicit: Some(list),
                ..
            } => IndexSet::from_singles(
                list.iter()
                    .filter(|&&(n, _)| n == k)
                    .map(|&(_, m)| m)
                    .collect(),
            ),
            IndexSet::Double { pred, .. } => {
                let pred = Arc::clone(pred);
                IndexSet::from_single_pred(move |m| pred(k, m))
            }
            IndexSet::Single { .. } => panic!("row_section on a single set"),
        }
    }

    /// Row indices that actually occur in an explicit pair set, or `None`
    /// when the set is predicate-only.
    pub fn occupied_rows(&self) -> Option<Vec<usize>> {
        Some(self.grouped_rows()?.into_iter().map(|(k, _)| k).collect())
    }

    /// Row sections of an explicit pair set, grouped in one pass over the
    /// lexicographically sorted list. `None` when predicate-only.
    pub fn grouped_rows(&self) -> Option<Vec<(usize, IndexSet)>> {
        match self {
            IndexSet::Double {
                explicit: Some(list),
                ..
            } => {
                let mut out: Vec<(usize, IndexSet)> = Vec::new();
                let mut i = 0usize;
                while i < list.len() {
                    let row = list[i].0;
                    let mut cols = Vec::new();
                    while i < list.len() && list[i].0 == row {
                        cols.push(list[i].1);
                        i += 1;
                    }
                    out.push((row, IndexSet::from_singles(cols)));
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// `A^T = {(m, n) : (n, m) ∈ A}`.
    pub fn transpose(&self) -> IndexSet {
        match self {
            IndexSet::Double {
                explicit: Some(list),
                ..
            } => IndexSet::from_pairs(list.iter().map(|&(n, m)| (m, n)).collect()),
            IndexSet::Double { pred, .. } => {
                let pred = Arc::clone(pred);
                IndexSet::from_pair_pred(move |n, m| pred(m, n))
            }
            IndexSet::Single { .. } => panic!("transpose on a single set"),
        }
    }

    /// Check that an explicit list, when present, agrees with the predicate
    /// on the scale window. Intended for tests.
    pub fn explicit_consistent(&self, scale: usize) -> bool {
        match self {
            IndexSet::Single {
                pred,
                explicit: Some(list),
            } => (1..=scale).all(|n| pred(n) == list.binary_search(&n).is_ok()),
            IndexSet::Double {
                pred,
                explicit: Some(list),
            } => (1..=scale).all(|n| {
                (1..=scale).all(|m| pred(n, m) == list.binary_search(&(n, m)).is_ok())
            }),
            _ => true,
        }
    }
}

impl std::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexSet::Single { explicit, .. } => match explicit {
                Some(list) => write!(f, "IndexSet(single, |A| = {})", list.len()),
                None => write!(f, "IndexSet(single, predicate)"),
            },
            IndexSet::Double { explicit, .. } => match explicit {
                Some(list) => write!(f, "IndexSet(double, |A| = {})", list.len()),
                None => write!(f, "IndexSet(double, predicate)"),
            },
        }
    }
}
