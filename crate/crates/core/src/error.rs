use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the numerical core, the experiment drivers and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("vector is not unit norm (norm = {norm})")]
    NotUnit { norm: f64 },

    #[error("iterate collapsed to zero at step {step}")]
    DegenerateIterate { step: usize },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("top eigenvalues are not separated ({first} vs {second})")]
    DegenerateGap { first: f64, second: f64 },

    #[error("jacobi did not converge after {sweeps} sweeps (off-diagonal {off})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("node {index} has no neighbours")]
    IsolatedNode { index: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures of a mathematical precondition, as opposed to bad
    /// input or I/O. The CLI maps these to a distinct exit code.
    pub fn is_math(&self) -> bool {
        matches!(
            self,
            Error::NotSymmetric { .. }
                | Error::NotUnit { .. }
                | Error::DegenerateIterate { .. }
                | Error::InvalidSpectrum(_)
                | Error::DegenerateGap { .. }
                | Error::NoConvergence { .. }
                | Error::IsolatedNode { .. }
                | Error::Invariant(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
