//! Exact harmonic analysis on finite homogeneous spaces.
//!
//! The crate works with permutation modules `M^a` of the symmetric group,
//! their isotypic and Gelfand-Tsetlin decompositions, intertwiners built
//! from transport matrices, spectra of the swap Laplacians `Δ_{i,j}`, and
//! orbit/multiplicity rules for crested and wreath products of permutation
//! actions. All scalars are exact rationals.

pub mod algebra;
pub mod error;
pub mod gt;
pub mod linalg;
pub mod m211;
pub mod mabc;
pub mod schemes;
pub mod semistandard;
pub mod symmetric;

pub use error::{Error, Result};
pub use linalg::{Matrix, Q};
