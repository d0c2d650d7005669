//! Computable finite-scale models of ideals on the positive integers and on
//! pairs, plus the smallness test every other module consults.

mod index_set;
mod models;
mod parse;

pub use index_set::{Arity, IndexSet};
pub use models::{
    fubini_product, make_density_zero, make_double_density, make_e_ideal, make_fin,
    make_pringsheim, transpose, FiniteIdealModel,
};
pub use parse::parse_ideal;
