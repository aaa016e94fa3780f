//! Exact Lie-theoretic computations on flag varieties: root systems and Weyl
//! groups, Borel-Weil-Bott for line bundles, potential supports of cohomology
//! of equivariant bundles, tensor decompositions, a ledger of known cohomology
//! of tensor powers of the Borel subalgebra with spectral-sequence verdicts,
//! and a matrix-level null-cone membership test for sl_n.

pub mod bundles;
pub mod bwb;
pub mod error;
pub mod ledger;
pub mod nullcone;
pub mod repthy;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{build_root_system, Family, RootSystem, Weight};
