//! Finite-scale ideal cores and ideal cluster points of sequences in `R^k`.
//!
//! An ideal on the positive integers is a family of "small" index sets closed
//! under subsets and finite unions. This crate replaces genuine (infinite)
//! ideals by computable scale-indexed smallness models and, on top of them,
//! computes the objects of ideal convergence theory for finite sequence
//! windows:
//!
//! * ideal limit superior / inferior of real sequences ([`limits`]),
//! * the set of ideal cluster points by adaptive grid refinement ([`cluster`]),
//! * the ideal core by three independent constructions — support halfspaces,
//!   convex hull of cluster points, and Euclidean ball intersection ([`core`]),
//! * Carathéodory and barycentric-measure decompositions of core points,
//! * Euler r-means and double-sequence convergence modes (Pringsheim,
//!   statistical, e-convergence) in [`transforms`].
//!
//! The geometric kernel ([`geometry`]) runs a dense simplex solver that is
//! generic over the scalar type; membership and separation certificates are
//! produced in exact rational arithmetic so verdicts near hull boundaries are
//! unambiguous.
//!
//! All numeric kernels are generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases at the crate root fix the double-precision instantiation
//! used by the CLI.

pub mod cluster;
pub mod core;
pub mod corpus;
pub mod error;
pub mod geometry;
pub mod ideal;
pub mod limits;
pub mod scalar;
pub mod sequence;
pub mod transforms;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision sequence window.
pub type Window64 = sequence::SequenceWindow<f64>;
/// Double-precision cluster-set estimate.
pub type ClusterSet64 = cluster::ClusterSet<f64>;
/// Double-precision polytope.
pub type Polytope64 = geometry::Polytope<f64>;
/// Double-precision core report.
pub type CoreReport64 = core::CoreReport<f64>;
