use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("vectors do not form a basis")]
    NotABasis,
    #[error("determinant must equal 1 (got {0})")]
    DeterminantNotOne(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("unsupported order {order}: {reason}")]
    UnsupportedOrder { order: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
