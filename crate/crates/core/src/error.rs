use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {0} is not strict")]
    NotStrict(String),

    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: u32, found: u32 },

    #[error("color index {color} out of range for {colors} colors")]
    ColorOutOfRange { color: usize, colors: usize },

    #[error("cycle supports overlap at point {0}")]
    OverlappingSupports(usize),

    #[error("evaluation point has repeated coordinate {0}")]
    RepeatedCoordinates(String),

    #[error("need at least {needed} variables, got {got}")]
    TooFewVariables { needed: usize, got: usize },

    #[error("character value {value} for {context} is not an integer")]
    NonInteger { context: String, value: String },

    #[error("unknown builtin group `{0}`")]
    UnknownGroup(String),

    #[error("malformed group data: {0}")]
    MalformedGroup(String),

    #[error("group validation failed: {0}")]
    Validation(String),

    #[error("value cannot be serialized: {0}")]
    Serialization(String),

    #[error("oracle size {order} exceeds cap {cap}")]
    OracleTooLarge { order: u128, cap: u128 },

    #[error("no concrete model for group `{0}`")]
    NoConcreteModel(String),

    #[error("eigenvalues not separated after {0} attempts")]
    EigenSeparation(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
