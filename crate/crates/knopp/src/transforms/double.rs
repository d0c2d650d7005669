//! Double-sequence convergence modes and their cores.
//!
//! Pringsheim, statistical and e-convergence are all instances of ideal
//! convergence on the square window, under the border ideal, the
//! double-density ideal and the transposed Fubini product respectively.

use crate::core::{core_by_support, is_ideal_convergent, CoreParams, CoreReport};
use crate::error::{Error, Result};
use crate::ideal::{make_double_density, make_e_ideal, make_pringsheim, FiniteIdealModel};
use crate::scalar::Real;
use crate::sequence::{Scale, SequenceWindow};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubleMode {
    Pringsheim,
    Statistical,
    EConvergence,
}

impl DoubleMode {
    pub fn label(self) -> &'static str {
        match self {
            DoubleMode::Pringsheim => "pringsheim",
            DoubleMode::Statistical => "statistical",
            DoubleMode::EConvergence => "e",
        }
    }

    /// The smallness model realizing this mode, at the default thresholds.
    pub fn model(self) -> FiniteIdealModel {
        match self {
            DoubleMode::Pringsheim => make_pringsheim(0.1).expect("default theta_p valid"),
            DoubleMode::Statistical => make_double_density(0.05).expect("default theta valid"),
            DoubleMode::EConvergence => make_e_ideal(),
        }
    }
}

/// Convergence verdict plus the mode's core (P-core, statistical P-core or
/// e-core).
#[derive(Clone, Debug)]
pub struct DoubleReport<T> {
    pub mode: DoubleMode,
    pub limit: Option<Vec<T>>,
    pub core: CoreReport<T>,
}

/// Analyze a double window under the chosen convergence mode.
pub fn double_convergence<T: Real>(
    x: &SequenceWindow<T>,
    mode: DoubleMode,
    tol: T,
    params: &CoreParams<T>,
) -> Result<DoubleReport<T>> {
    if !matches!(x.scale(), Scale::Double { .. }) {
        return Err(Error::parameter(
            "window",
            "double-sequence analysis needs a double window",
        ));
    }
    let model = mode.model();
    let limit = is_ideal_convergent(x, &model, tol, params)?;
    let core = core_by_support(x, &model, params)?;
    Ok(DoubleReport { mode, limit, core })
}
