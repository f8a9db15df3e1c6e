use ldml::LdmlError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config error at line {line}: {msg}")]
    ConfigLine { line: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl BenchError {
    /// Process exit code: 2 config, 3 data, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::ConfigLine { .. } | BenchError::Config(_) => 2,
            BenchError::Data(_) | BenchError::Io { .. } => 3,
            BenchError::Internal(_) => 4,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<LdmlError> for BenchError {
    fn from(e: LdmlError) -> Self {
        match e {
            LdmlError::Domain(_) | LdmlError::Infeasible(_) => BenchError::Config(e.to_string()),
            LdmlError::Format { .. } | LdmlError::DimensionMismatch { .. } | LdmlError::EmptyInput(_) => {
                BenchError::Data(e.to_string())
            }
            LdmlError::Io { .. } => BenchError::Data(e.to_string()),
            LdmlError::EmptyList => BenchError::Internal(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;
