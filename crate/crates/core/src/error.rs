use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("group order exceeds the configured cap of {cap}")]
    SizeCap { cap: usize },

    #[error("functions live on different groups")]
    GroupMismatch,

    #[error("function is not constant on conjugacy class {class}")]
    NotClassFunction { class: usize },

    #[error("index {index} out of range (0..{len})")]
    OutOfRange { index: usize, len: usize },

    #[error("group is not abelian")]
    NotAbelian,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("computation failed: {0}")]
    Computation(String),

    #[error("identity check failed: {0}")]
    Identity(String),

    #[error("unsupported root system type {0:?}")]
    UnsupportedType(String),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
