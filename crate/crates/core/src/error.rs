use thiserror::Error;

use crate::exactmath::FieldTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldTag, right: FieldTag },
    #[error("internal limit exceeded: {0}")]
    InternalLimit(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::InternalLimit(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
