use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("filling is not column-strict: {0}")]
    NotColumnStrict(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("malformed value: {0}")]
    Parse(String),

    /// An internal consistency check failed. Never expected on valid input.
    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_invariant_breach(&self) -> bool {
        matches!(self, Error::InvariantBreach(_))
    }
}
