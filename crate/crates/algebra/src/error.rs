use thiserror::Error;

/// Failures of exact-algebra operations.
///
/// `ResourceLimit` is kept apart from every mathematical outcome so that
/// callers can report "undecided" instead of a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different polynomial rings")]
    RingMismatch,
    #[error("operands belong to different coefficient fields")]
    FieldMismatch,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
