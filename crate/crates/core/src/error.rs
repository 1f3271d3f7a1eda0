use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("within-class scatter is not positive definite (ridge {ridge:e}); try a larger ridge")]
    SingularScatter { ridge: f64 },

    #[error("matrix is not positive semi-definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemiDefinite { min_eigenvalue: f64 },

    #[error("eigen-solver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {message}")]
    Data { path: PathBuf, message: String },

    #[error("{path}: row {row}, column `{column}`: {message}")]
    Cell {
        path: PathBuf,
        row: usize,
        column: String,
        message: String,
    },

    #[error("stratification: {0}")]
    Stratification(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Broad failure class, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Data,
    Numeric,
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) => ErrorClass::Config,
            Error::Data { .. }
            | Error::Cell { .. }
            | Error::Stratification(_)
            | Error::InsufficientData(_)
            | Error::Io(_)
            | Error::Csv(_) => ErrorClass::Data,
            Error::Shape(_)
            | Error::NonFinite { .. }
            | Error::SingularScatter { .. }
            | Error::NotPositiveSemiDefinite { .. }
            | Error::NoConvergence { .. } => ErrorClass::Numeric,
            Error::Context { source, .. } => source.class(),
        }
    }
}
