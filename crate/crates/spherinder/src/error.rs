use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] spherinder_core::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("bracket [{low}, {high}] does not straddle a sign change (g = {g_low:e}, {g_high:e})")]
    Bracket { low: f64, high: f64, g_low: f64, g_high: f64 },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Manifest(_) | Error::Json(_) => 2,
            Error::Core(_) => 3,
            Error::Solver(_) | Error::Bracket { .. } => 4,
            Error::Io(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
