//! Exact computer algebra for Clifford algebras, gamma matrices and spinor identities.
//!
//! All arithmetic is over the Gaussian rationals, so every check is an exact
//! equality.

pub mod classification;
pub mod cli;
pub mod clifford;
pub mod conjugation;
pub mod error;
pub mod exactnum;
pub mod forms;
pub mod gamma;
pub mod identities;
pub mod superalgebra;

pub use error::{Error, Result};
pub use exactnum::{ExactMatrix, GaussianRational};
