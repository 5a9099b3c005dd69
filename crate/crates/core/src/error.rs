//! Error type shared across the library and the CLI.
//!
//! Every variant belongs to one of three classes, mirrored by the CLI exit
//! codes: usage problems (1), input validation failures (2), and numerical
//! failures discovered mid-computation (3).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Command-line arguments were malformed or contradictory.
    #[error("usage error: {0}")]
    Usage(String),

    /// An input had the wrong shape (size mismatch, empty, non-square, ...).
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An input contained NaN or infinite entries.
    #[error("non-finite input: {0}")]
    NonFinite(String),

    /// A covariance block failed its symmetry check.
    #[error("{block} is not {expected}: max deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    Symmetry {
        block: String,
        expected: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    /// A covariance failed its positive semi-definiteness check.
    #[error("{block} is not positive semi-definite: pivot {pivot:.3e} at index {index}")]
    NotPsd {
        block: String,
        pivot: f64,
        index: usize,
    },

    /// An estimator that requires proper noise was given improper noise.
    #[error("noise is improper (max |C_tilde| = {max_abs:.3e}); this estimator requires proper noise (C_tilde = 0)")]
    ImproperNoise { max_abs: f64 },

    /// A required piece of configuration was missing or unsupported.
    #[error("configuration error: {0}")]
    Config(String),

    /// Input data violated a value-level contract.
    #[error("validation error: {0}")]
    Validation(String),

    /// A file could not be parsed.
    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },

    /// A file could not be read or written.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A matrix required to be positive definite was not.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// The measurement matrix does not have full column rank.
    #[error("rank deficiency: {0}")]
    RankDeficient(String),

    /// An internal cross-check failed; the result cannot be trusted.
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),

    /// A Monte Carlo sweep aborted; carries the failing grid point and trial.
    #[error("sweep aborted at sigma2 = {sigma2:.6e}, trial {trial}: {source}")]
    SweepAborted {
        sigma2: f64,
        trial: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Process exit code for this error: 1 usage, 2 validation, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Dimension(_)
            | Error::NonFinite(_)
            | Error::Symmetry { .. }
            | Error::NotPsd { .. }
            | Error::ImproperNoise { .. }
            | Error::Config(_)
            | Error::Validation(_)
            | Error::Parse { .. }
            | Error::Io { .. } => 2,
            Error::Singular(_) | Error::RankDeficient(_) | Error::Inconsistent(_) => 3,
            Error::SweepAborted { source, .. } => source.exit_code(),
        }
    }
}
