//! Summability transforms and double-sequence convergence modes.

mod double;
mod euler;

pub use double::{double_convergence, DoubleMode, DoubleReport};
pub use euler::{euler_core, euler_row, euler_transform};
