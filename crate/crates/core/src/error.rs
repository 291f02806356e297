use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands belong to different spaces")]
    MixedSpace,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size {size} exceeds enumeration bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("consistency violation: {0}")]
    Consistency(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
