use thiserror::Error;

/// Errors raised by the library. Every variant has a stable machine code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("vector is empty")]
    EmptyVector,

    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: String },

    #[error("entries sum to {sum}, not 1 (deficit {deficit})")]
    SumNotOne { sum: String, deficit: String },

    #[error("rank/order parameters out of range: {0}")]
    RankOrderViolation(String),

    #[error("pair is not solvable incomparable (classification {classification})")]
    UnsolvablePair { classification: String },

    #[error("catalyst entry {index} is zero; filters need a strictly positive catalyst")]
    DegenerateCatalyst { index: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ensemble weights sum to {sum}, not 1")]
    WeightSumNotOne { sum: String },

    #[error("ensemble weight {index} is not positive")]
    InvalidWeight { index: usize },

    #[error("protocol infeasible: branches {failed:?} cannot be converted")]
    ProtocolInfeasible { failed: Vec<usize> },
}

/// Broad class of an error, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input data.
    Input,
    /// Well-formed input that violates an operation's precondition.
    Precondition,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE_ERROR",
            Error::EmptyVector => "EMPTY_VECTOR",
            Error::NegativeEntry { .. } => "NEGATIVE_ENTRY",
            Error::SumNotOne { .. } => "SUM_NOT_ONE",
            Error::RankOrderViolation(_) => "RANK_ORDER_VIOLATION",
            Error::UnsolvablePair { .. } => "UNSOLVABLE_PAIR",
            Error::DegenerateCatalyst { .. } => "DEGENERATE_CATALYST",
            Error::IndexOutOfRange(_) => "INDEX_OUT_OF_RANGE",
            Error::InvalidGrid(_) => "INVALID_GRID",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::WeightSumNotOne { .. } => "WEIGHT_SUM_NOT_ONE",
            Error::InvalidWeight { .. } => "INVALID_WEIGHT",
            Error::ProtocolInfeasible { .. } => "PROTOCOL_INFEASIBLE",
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_)
            | Error::EmptyVector
            | Error::NegativeEntry { .. }
            | Error::SumNotOne { .. }
            | Error::DimensionMismatch { .. }
            | Error::WeightSumNotOne { .. }
            | Error::InvalidWeight { .. } => ErrorKind::Input,
            Error::RankOrderViolation(_)
            | Error::UnsolvablePair { .. }
            | Error::DegenerateCatalyst { .. }
            | Error::IndexOutOfRange(_)
            | Error::InvalidGrid(_)
            | Error::ProtocolInfeasible { .. } => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
