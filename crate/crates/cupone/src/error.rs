use thiserror::Error;

/// Errors raised by the library. `exit_code` maps them onto the CLI contract.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("wrong degree: {0}")]
    Degree(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("stage cap: {0}")]
    StageCap(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("face identity violated at cell {0}")]
    Face(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Usage(_) | Error::Parse { .. } | Error::Face(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
