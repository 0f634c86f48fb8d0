//! File formats: Matrix Market matrices, JSON side-files and results, CSV
//! grid dumps, and run manifests.

pub mod grid;
pub mod json;
pub mod manifest;
pub mod mtx;

pub use grid::{equatorial_grid, meridional_grid, write_grid, GridDump, GridHeader};
pub use json::{OperatorSideFile, ResultsFile, TagJson, SCHEMA_VERSION};
pub use manifest::RunManifest;
pub use mtx::{read_matrix_market, write_matrix_market};
