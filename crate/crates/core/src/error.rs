use thiserror::Error;

/// Errors raised across the discord pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parameter count is only defined for X and extended-X structure")]
    UnsupportedTag,

    #[error("state does not have extended-X structure")]
    NotExtendedX,

    #[error("matrix does not have X structure")]
    NotXStructured,

    #[error("state is not an X state")]
    NotXState,

    #[error("state is not a two-qubit state (d = {0})")]
    NotTwoQubit(usize),

    #[error("t^2 + |y|^2 = {norm_sq}, expected 1")]
    ConstraintViolated { norm_sq: f64 },

    #[error("numerical input error: {0}")]
    NumericalInput(String),

    #[error("bad state spec: {0}")]
    BadSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
