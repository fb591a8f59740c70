use thiserror::Error;

use crate::decoder::DecodeFailure;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("base field size q = {0} is not supported (q must be at most 256)")]
    UnsupportedBase(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus has degree {got:?}, expected {expected}")]
    ModulusDegree { expected: usize, got: Option<usize> },
    #[error("modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid coordinate vector: {0}")]
    InvalidCoords(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("dimension {requested} exceeds the ambient dimension {ambient}")]
    DimensionTooLarge { requested: usize, ambient: usize },
    #[error("cannot reach full support: {0}")]
    ImpossibleSupport(String),
    #[error("sampling gave up after {0} attempts")]
    BudgetExhausted(usize),
    #[error("parameter violation: {0}")]
    Params(String),
    #[error("error matrix has rank weight {got}, expected {expected}")]
    WrongWeight { expected: usize, got: usize },
    #[error("decoding failed: {0}")]
    Decode(#[from] DecodeFailure),
    #[error("ciphertext is not consistent with the public key")]
    Inconsistent,
    #[error("malformed encoding: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
