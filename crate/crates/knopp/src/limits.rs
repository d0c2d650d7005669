//! Finite-scale ideal limit superior / inferior of real-valued windows; the
//! scalar engine behind the support-function core construction and the ball
//! characterization.

use crate::error::{Error, Result};
use crate::ideal::FiniteIdealModel;
use crate::scalar::{norm2, Real};
use crate::sequence::{Scale, SequenceWindow};

/// Parameters of the scalar limit search.
#[derive(Clone, Debug)]
pub struct LimitParams<T> {
    /// Grid step on values.
    pub delta: T,
    /// Ideal-boundedness bound; `None` skips the check.
    pub bound: Option<T>,
}

impl<T: Real> Default for LimitParams<T> {
    fn default() -> Self {
        LimitParams {
            delta: T::of_f64(1e-2),
            bound: Some(T::of_f64(100.0)),
        }
    }
}

impl<T: Real> LimitParams<T> {
    pub fn with_delta(delta: T) -> Self {
        LimitParams {
            delta,
            ..Self::default()
        }
    }

    pub fn unchecked(mut self) -> Self {
        self.bound = None;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta > T::zero()) {
            return Err(Error::parameter("delta", "must be positive"));
        }
        Ok(())
    }
}

/// Finite-scale limit report of a scalar window.
#[derive(Clone, Debug)]
pub struct ScalarLimitReport<T> {
    pub ilimsup: T,
    pub iliminf: T,
    pub delta: T,
    pub scale: Scale,
}

/// Fail unless the index set where `‖x_n‖ > bound` is small.
pub fn ensure_ideal_bounded<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    bound: T,
) -> Result<()> {
    let over = x.hit_set(|p| norm2(p) > bound);
    if model.is_small(&over, x.scale().bound())? {
        Ok(())
    } else {
        Err(Error::UnboundedSequence {
            model: model.name().to_string(),
            bound: bound.approx_f64(),
        })
    }
}

/// Largest grid value `v` (grid `{vmax - j·delta}`) such that the index set
/// `{n : x_n > v - delta}` is not small. Within `delta` of the finite-scale
/// ideal limit superior.
///
/// The hit sets only grow as `v` descends and smallness is monotone, so the
/// verdict is monotone along the grid; the largest passing grid value is
/// located by bisection and the returned boundary is certified by direct
/// evaluation on both sides (the result is exactly what a full descending
/// scan would return).
pub fn ideal_limsup<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    params: &LimitParams<T>,
) -> Result<T> {
    params.validate()?;
    let values = x.scalars()?;
    if let Some(bound) = params.bound {
        ensure_ideal_bounded(x, model, bound)?;
    }

    let scale = x.scale().bound();
    let delta = params.delta;
    let vmax = values.iter().cloned().fold(values[0], T::max);
    let vmin = values.iter().cloned().fold(values[0], T::min);
    if vmax == vmin {
        return Ok(vmax);
    }

    // Grid value at step j, anchored at the window maximum.
    let grid = |j: usize| vmax - T::of_usize(j) * delta;
    // Smallest j whose grid value still has to pass: at j_last the threshold
    // drops below every value, so the hit set is the full window.
    let j_last = ((vmax - vmin) / delta).ceil().approx_f64() as usize + 1;

    let passes = |j: usize| -> Result<bool> {
        let threshold = grid(j) - delta;
        let hits = x.hit_set(|p| p[0] > threshold);
        Ok(!model.is_small(&hits, scale)?)
    };

    if passes(0)? {
        return Ok(grid(0));
    }
    if !passes(j_last)? {
        // Unreachable for proper models: at j_last the threshold sits below
        // every value, so the hit set is the full window.
        return Ok(grid(j_last));
    }

    // Invariant: `lo` was evaluated and fails, `hi` was evaluated and
    // passes, so the returned boundary is certified on both sides.
    let (mut lo, mut hi) = (0usize, j_last);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(grid(hi))
}

/// Mirror image: `liminf(x) = -limsup(-x)` exactly.
pub fn ideal_liminf<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    params: &LimitParams<T>,
) -> Result<T> {
    Ok(-ideal_limsup(&x.negated(), model, params)?)
}

/// Both limits in one report.
pub fn limit_report<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    params: &LimitParams<T>,
) -> Result<ScalarLimitReport<T>> {
    let ilimsup = ideal_limsup(x, model, params)?;
    let iliminf = ideal_liminf(x, model, params)?;
    Ok(ScalarLimitReport {
        ilimsup,
        iliminf,
        delta: params.delta,
        scale: x.scale(),
    })
}

/// Scalar ideal convergence: the midpoint when limsup and liminf agree
/// within `tol`.
pub fn is_scalar_ideal_convergent<T: Real>(
    x: &SequenceWindow<T>,
    model: &FiniteIdealModel,
    tol: T,
    params: &LimitParams<T>,
) -> Result<Option<T>> {
    if !(tol > T::zero()) {
        return Err(Error::parameter("tol", "must be positive"));
    }
    let report = limit_report(x, model, params)?;
    if report.ilimsup - report.iliminf <= tol {
        Ok(Some(
            (report.ilimsup + report.iliminf) / T::of_f64(2.0),
        ))
    } else {
        Ok(None)
    }
}
