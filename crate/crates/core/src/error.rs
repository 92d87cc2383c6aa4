use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole at {at}")]
    Pole { at: String },

    /// The requested quantity vanishes; the caller asked for its logarithm.
    #[error("zero of multiplicity {multiplicity} at {at}")]
    Zero { at: String, multiplicity: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("branch undefined: {0}")]
    Branch(String),

    #[error("point outside admissible sector: {0}")]
    Sector(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("negative multiplicity: {0}")]
    Negativity(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("checksum mismatch: expected {expected}, found {found}")]
    Checksum { expected: String, found: String },

    #[error("cutoff mismatch: table built at {table}, requested {requested}")]
    CutoffMismatch { table: f64, requested: f64 },

    #[error("integer overflow while {0}")]
    Overflow(String),

    #[error("quadrature did not converge: {0}")]
    Convergence(String),

    #[error("i/o error on {path:?}: {message}")]
    Io { path: PathBuf, message: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn pole(at: impl std::fmt::Display) -> Self {
        Error::Pole { at: at.to_string() }
    }

    /// Errors that stem from the numerical domain rather than bad input files
    /// or configuration.
    pub fn is_numeric_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Zero { .. }
                | Error::Domain(_)
                | Error::Branch(_)
                | Error::Sector(_)
                | Error::Convergence(_)
        )
    }
}
