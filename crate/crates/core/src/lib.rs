//! Structured matrix pencils with closed-form eigenpairs.
//!
//! The crate builds banded Toeplitz-plus-Hankel matrices, corner-overlapped
//! block matrices, 1D finite element pencils and their tensor products,
//! generates their eigenpairs in closed form, and checks them against dense
//! numerical oracles.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod mtx;
pub mod poly;
pub mod reference;
pub mod sampling;
pub mod scalar;
pub mod solution;
pub mod structured;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use scalar::Scalar;
pub use solution::{EigenPair, EigenSolution, Provenance};
