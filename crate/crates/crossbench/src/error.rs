use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error at {path}: {reason}")]
    Config { path: String, reason: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown suite `{0}` (expected core, beurling, correspondence, anti, tensor, actions or all)")]
    UnknownSuite(String),

    #[error("malformed report: {0}")]
    Report(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] crossbench_core::Error),
}

impl HarnessError {
    pub fn config(path: impl Into<String>, reason: impl ToString) -> Self {
        HarnessError::Config {
            path: path.into(),
            reason: reason.to_string(),
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
