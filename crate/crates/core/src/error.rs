use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: index {index} outside 1..={modes}")]
    Range {
        line: usize,
        index: usize,
        modes: usize,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("qubit count mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("unsupported term {term}: {reason}")]
    Unsupported { term: String, reason: String },

    #[error("graph error: {0}")]
    Graph(String),

    #[error("numerical error: {0}")]
    Numeric(String),
}

impl Error {
    /// Coarse category used for process exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::Range { .. }
            | Error::Validation(_)
            | Error::Dimension { .. }
            | Error::Unsupported { .. }
            | Error::Graph(_) => ErrorKind::Validation,
            Error::Numeric(_) => ErrorKind::Numeric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    Numeric,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
