use std::process::ExitCode;

use ratsub_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    File { path: String, source: Box<CliError> },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn parse(line: usize, message: String) -> Self {
        CliError::Parse { line, message }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::File { source, .. } => source.code(),
            CliError::Precondition(_) => 3,
            CliError::Core(e) => match e {
                Error::Input(_) | Error::InvalidGroup(_) | Error::AlphabetMismatch => 2,
                Error::Precondition(_) | Error::NotContained { .. } | Error::Unsupported(_) | Error::Guard(_) | Error::Inconsistency(_) => {
                    3
                }
            },
        }
    }
}
