//! Solvers, file formats and the command-line front end for the
//! `spherinder-core` operator library.

pub mod cli;
pub mod critical;
pub mod error;
pub mod io;
pub mod report;
pub mod solve;

pub use error::{Error, Result};
