use thiserror::Error;

#[derive(Debug, Error)]
pub enum LdmlError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("hypothesis list is empty")]
    EmptyList,

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, LdmlError>;

pub(crate) fn domain(msg: impl Into<String>) -> LdmlError {
    LdmlError::Domain(msg.into())
}
