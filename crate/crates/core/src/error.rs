use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("polynomial {0} is not irreducible")]
    Reducible(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{what}: {count} exceeds the enumeration cap {cap}")]
    CapExceeded { what: String, count: u128, cap: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("generator matrix has F_q-rank {rank}, expected {rows}")]
    NotFullRank { rank: usize, rows: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, count: u128, cap: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            count,
            cap,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
