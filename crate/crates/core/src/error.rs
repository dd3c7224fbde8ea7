use thiserror::Error;

use crate::laws::Verdict;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("matrix is singular")]
    Singular,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("missing product: {0}")]
    MissingProduct(&'static str),
    #[error("orientation mismatch: expected {expected}, found {found}")]
    Orientation {
        expected: &'static str,
        found: &'static str,
    },
    #[error("characteristic not allowed: {0}")]
    Characteristic(String),
    #[error("law check failed: {}", .0.summary())]
    LawFailure(Box<Verdict>),
    #[error("element is not invertible in the dot product")]
    NonInvertibleElement,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("not in the expected space: {0}")]
    NotInSpace(String),
    #[error("grid too small: {0}")]
    GridTooSmall(String),
    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn law(v: Verdict) -> Self {
        Error::LawFailure(Box::new(v))
    }
}
