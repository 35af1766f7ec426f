use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order {requested} exceeds the configured cap {cap}")]
    OrderCap { requested: usize, cap: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("sequence of order {available} cannot answer a query of order {requested}")]
    InsufficientOrder { requested: usize, available: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("value is not representable exactly: {0}")]
    Inexact(String),

    #[error("numeric error: {message} (best estimate {estimate})")]
    Numeric { message: String, estimate: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
