use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid command line or scenario.
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Sim(#[from] mstc_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit status: 1 for usage errors, 2 for runtime and I/O errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Sim(_) | CliError::Io { .. } => 2,
        }
    }
}
