use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(String, String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("desk-scale bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("illegal fractional shift: {0}")]
    FractionalShift(String),
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a morphism pair: {0}")]
    NotMorphismPair(String),
    #[error("not a quasi-isomorphism")]
    NotQuasiIso,
    #[error("no null-homotopy: {0}")]
    NoWitness(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
