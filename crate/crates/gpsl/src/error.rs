use std::path::PathBuf;

use gpsl_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    /// Success, or every checked property held.
    pub const OK: u8 = 0;
    /// A verified property failed.
    pub const PROPERTY: u8 = 1;
    /// Bad arguments, configuration or input files.
    pub const USAGE: u8 = 2;
    /// A numerical routine failed.
    pub const NUMERICAL: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config {path}: {msg}")]
    Config { path: PathBuf, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed overlay {path}: {msg}")]
    MalformedOverlay { path: PathBuf, msg: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Property(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } | CliError::Io { .. } | CliError::MalformedOverlay { .. } => {
                exit::USAGE
            }
            CliError::Property(_) => exit::PROPERTY,
            CliError::Core(e) => match e {
                CoreError::Domain(_)
                | CoreError::MalformedInput(_)
                | CoreError::DegenerateConfig(_)
                | CoreError::CoincidentPoints { .. } => exit::USAGE,
                CoreError::NonConvergence { .. } | CoreError::NotBracketed { .. } | CoreError::SingularProfile(_) => {
                    exit::NUMERICAL
                }
            },
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
