use thiserror::Error;

use crate::wire::WireError;

/// Errors raised by the arithmetic, key generation and protocol layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element {value} out of range for q = {q}")]
    ElementOutOfRange { value: u16, q: u16 },
    #[error("matrix has rank {rank}, full rank {required} required")]
    RankDeficient { rank: usize, required: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("real argument out of range: {0}")]
    OutOfRange(String),
    #[error("matrix kind does not support this operation")]
    KindMismatch,
    #[error("key generation failed after {0} attempts")]
    KeygenExhausted(usize),
    #[error("`{op}` called in phase {phase}")]
    OutOfPhase { op: &'static str, phase: &'static str },
    #[error("{0} rounds exceed the 256 bits available for challenge bits")]
    TooManyRounds(usize),
    #[error("public key and private key do not belong together: {0}")]
    KeyMismatch(String),
    #[error("extraction failed: {0}")]
    Extraction(String),
    #[error(transparent)]
    Wire(#[from] WireError),
}

pub type Result<T> = std::result::Result<T, Error>;
