use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input violates a precondition (shape, finiteness, Hermiticity, range).
    #[error("invalid input: {0}")]
    Input(String),

    /// An ensemble constructor was asked to certify a state whose criterion
    /// value exceeds the threshold.
    #[error("{criterion} = {value} exceeds threshold {threshold}: no certified ensemble")]
    Refused {
        criterion: String,
        value: f64,
        threshold: f64,
    },

    /// Malformed tensor or state file.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<S: Into<String>>(msg: S) -> Error {
    Error::Input(msg.into())
}
