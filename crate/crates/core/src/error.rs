use strata_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("no circuit of size d+1 exists")]
    NoReferenceCircuit,
    #[error("not a paving matroid")]
    NotPaving,
    #[error("cell is not matroidal: {0}")]
    NonMatroidalCell(String),
    #[error("malformed catalog line {line}: {msg}")]
    Catalog { line: usize, msg: String },
    #[error("bad input: {0}")]
    Input(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CoreError {
    /// True when the failure came from a configured cap rather than from the mathematics.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, CoreError::Algebra(AlgebraError::ResourceLimit(_)))
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
