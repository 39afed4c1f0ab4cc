use std::path::PathBuf;

use thiserror::Error;
use zakharov_core::ZakharovError;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("config error: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Core {
        context: &'static str,
        #[source]
        source: ZakharovError,
    },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type LabResult<T> = std::result::Result<T, LabError>;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) => EXIT_CONFIG,
            LabError::Core { source, .. } => match source {
                ZakharovError::Capacity(_) => EXIT_CAPACITY,
                ZakharovError::Domain(_) | ZakharovError::Threshold { .. } => EXIT_CONFIG,
                _ => EXIT_NUMERICAL,
            },
            LabError::Io { .. } => EXIT_NUMERICAL,
        }
    }
}

/// Attaches a module context to core errors.
pub trait Context<T> {
    fn ctx(self, context: &'static str) -> LabResult<T>;
}

impl<T> Context<T> for zakharov_core::Result<T> {
    fn ctx(self, context: &'static str) -> LabResult<T> {
        self.map_err(|source| LabError::Core { context, source })
    }
}
