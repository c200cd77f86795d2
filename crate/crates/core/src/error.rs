use thiserror::Error;

/// Errors raised by the algebra, mould and solver layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group mismatch: {0:?} vs {1:?}")]
    GroupMismatch(Vec<u32>, Vec<u32>),
    #[error("side mismatch: expected {expected} side, found {found}")]
    SideMismatch { expected: &'static str, found: &'static str },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityError { expected: usize, found: usize },
    #[error("polynomial is not divisible by the linear form")]
    NotDivisible,
    #[error("ambient dimension {ambient} exceeds the size guard {limit}")]
    TooLarge { ambient: usize, limit: usize },
    #[error("depth {depth} exceeds the max-depth guard {limit}")]
    DepthGuard { depth: usize, limit: usize },
    #[error("no G exists: offending word {word}")]
    NotSolvable { word: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
