use thiserror::Error;

/// Errors raised by field construction, polynomial handling and the
/// permutation machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different field levels")]
    LevelMismatch,
    #[error("no primitive {0}-th root of unity in this field")]
    NoSuchRoot(u64),
    #[error("{what} {value} out of range (limit {limit})")]
    RangeError {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("map is not a permutation")]
    NotAPermutation,
    #[error("expected {expected} arguments, got {got}")]
    ArityError { expected: usize, got: usize },
    #[error("diagram does not commute at element rank {rank}")]
    DiagramMismatch { rank: u32 },
    #[error("gcd({0}, {1}) != 1, no Bezout pair")]
    NoBezout(i64, i64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cross-check failed at element rank {rank}: {context}")]
    CrossCheck { rank: u32, context: String },
    #[error("internal error: {0}")]
    InternalError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
