use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed group spec: {0}")]
    GroupSpec(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{what} cap exceeded: requested {requested}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u64,
        requested: u64,
    },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid Nielsen move: {0}")]
    InvalidMove(String),
    #[error("operation requires a 2x2 matrix group, got {0}")]
    NotMatrixGroup(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("tuple is not generating: {0}")]
    NotGenerating(String),
    #[error("no generating {k}-tuple found in {attempts} attempts")]
    NoGeneratingTuple { k: usize, attempts: usize },
    #[error("empty sample set")]
    EmptySamples,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for resource-cap violations (CLI exit code 2).
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
