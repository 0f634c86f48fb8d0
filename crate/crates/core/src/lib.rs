//! Sparse spectral calculus on the unit ball in stretched cylindrical
//! ("spherindrical") coordinates.
//!
//! The crate is `no_std` and only needs an allocator. It contains
//!
//! - [`jacobi`]: classical Jacobi polynomials, norms, Gauss quadrature and the
//!   banded parameter-moving operators,
//! - [`basis`]: geometry, truncation, spin-weighted basis evaluation,
//! - [`operators`]: assembled sparse operators between tagged spaces,
//! - [`problems`]: builders for the generalized eigenproblems.
//!
//! Solvers, file formats and the command-line front end live in the
//! `spherinder` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod basis;
pub mod error;
pub mod jacobi;
pub mod math;
pub mod operators;
pub mod problems;
pub mod sparse;
pub mod tridiag;

pub use num_complex::Complex64;

pub use basis::{SpaceTag, SpectralField, SpherinderPoint, Spin, SpinVectorField, Truncation};
pub use error::{Error, Result};
pub use jacobi::{BandedJacobiOperator, JacobiOperatorKind, JacobiParams, QuadratureRule};
pub use operators::AssembledOperator;
pub use problems::{GeneralizedEVP, Method, PhysicalParams, ProblemKind};
pub use sparse::CooMatrix;
