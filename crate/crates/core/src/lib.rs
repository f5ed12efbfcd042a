//! Laplace spectra of compact simple Lie groups as shifted sums of squares,
//! representation counts for sums of squares, and the Strichartz exponents
//! built from them.
//!
//! The modules mirror the computation chain:
//!
//! - [`root_systems`]: exact root data and the constants `b`, `R0`, `A`.
//! - [`spectrum`]: eigenvalue numerators `R`, their multiplicities `N_R`, and
//!   Weyl dimensions.
//! - [`sum_of_squares`]: `r_{s,2}(R)` by three independent backends.
//! - [`exponents`]: `sigma(q)`, `s0`, `s0^R` and their gap identities.
//! - [`fourier_verify`]: the time-side orthogonality, Parseval and
//!   embedding-ratio checks over one period.

pub mod error;
pub mod exponents;
pub mod fourier_verify;
pub mod linalg;
pub mod root_systems;
mod serde_big;
pub mod spectrum;
pub mod sum_of_squares;

pub use error::{Error, Result};
pub use root_systems::{build_root_system, FamilyLabel, GroupFamily, RootSystem};
