use cqe_core::frontend::{FrontendError, SourceSpan};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{span}: parse error: {msg}")]
    Parse { span: SourceSpan, msg: String },
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error("{span}: {msg}")]
    Proof { span: SourceSpan, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit code: 1 for a failed proof step, 2 for parse and IO problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Proof { .. } => 1,
            CliError::Parse { .. } | CliError::Frontend(_) | CliError::Io { .. } => 2,
        }
    }

    pub fn proof(span: SourceSpan, msg: impl Into<String>) -> Self {
        CliError::Proof {
            span,
            msg: msg.into(),
        }
    }
}
