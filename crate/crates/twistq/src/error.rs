use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("not invertible: {0}")]
    NonInvertible(String),
    #[error("invalid Lie presentation: {0}")]
    Presentation(String),
    #[error("invalid realization: {0}")]
    Realization(String),
    #[error("twist rejected: {reason} (first failing order h^{order})")]
    TwistRejected { reason: String, order: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
