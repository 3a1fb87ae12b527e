use thiserror::Error;

/// Errors raised by group construction, the constraint solvers and the file front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("exhaustive enumeration of {size} cases exceeds the limit {limit}")]
    EnumerationLimit { size: String, limit: u64 },

    #[error("multiplication table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotPermutation { index: usize, degree: usize },

    #[error("element index {index} out of range for a group of order {order}")]
    InvalidElement { index: usize, order: usize },

    #[error("map is not a homomorphism: f({x}*{y}) != f({x})*f({y})")]
    NotHomomorphism { x: usize, y: usize },

    #[error("{0} is not surjective; element {1} of the target is never hit")]
    NotSurjective(String, usize),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not a normal subgroup")]
    NotNormal(String),

    #[error("incompatible lift data at source element {0}")]
    IncompatibleAt(usize),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
