use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("Jacobi parameters out of domain: a = {a}, b = {b} (both must exceed -1)")]
    ParameterDomain { a: f64, b: f64 },
    #[error("quadrature rule needs at least one point")]
    EmptyRule,
    #[error("mode (l = {l}, k = {k}) lies outside the truncation")]
    IndexOutOfTruncation { l: usize, k: usize },
    #[error("space tag mismatch: expected {expected}, found {found}")]
    TagMismatch { expected: String, found: String },
    #[error("assembly error: {0}")]
    Assembly(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
