//! Optimal unambiguous discrimination of two subspaces.
//!
//! Given two `k`-dimensional subspaces of a `2k`-dimensional complex Hilbert
//! space in general position (or, more generally, two density operators that
//! are diagonal in the Jordan bases of their supports), this crate builds the
//! measurement that never misidentifies the hypothesis and fails as rarely as
//! possible, compares it with the fidelity bound, classifies the `k = 2`
//! parameter plane and checks everything by Born-rule sampling.
//!
//! Modules, bottom-up:
//!
//! - [`linalg`]: small dense complex kernels (Jacobi eigensolver, SVD, Gram-Schmidt).
//! - [`jordan`]: subspaces, Jordan bases and principal angles.
//! - [`discriminate`]: sector intervals, optimal failure profile, POVM assembly and validation.
//! - [`regions`]: dividers, five-region classification and the 25-case census for `k = 2`.
//! - [`simulate`]: seeded Monte Carlo trials and the two application scenarios.

pub mod discriminate;
mod error;
pub mod jordan;
pub mod linalg;
pub mod regions;
pub mod simulate;

pub use error::{Error, Result};

pub use discriminate::{
    DiscriminationProblem, PovmSolution, Regime, SectorInterval, SectorSolution,
    ValidationReport,
};
pub use jordan::{JordanDecomposition, Subspace};
pub use linalg::{ComplexMatrix, ComplexVector, EigenSystem};
pub use regions::{CaseCensus, Region, RegionClassification};
