//! Library surface behind the `arank` binary: report documents, identity
//! file I/O, the results cache, and the command implementations.

pub mod cache;
pub mod commands;
pub mod identity_io;
pub mod report;

use arank_core::CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input: bad file, bad flag, bad parameter. Exit code 2.
    #[error("{0}")]
    Input(String),
    /// A construction or verification failed. Exit code 1.
    #[error("{0}")]
    Core(CoreError),
}

impl CliError {
    pub fn core(e: CoreError) -> Self {
        match e {
            CoreError::BadParameter(_)
            | CoreError::Parse(_)
            | CoreError::NonPositiveDim(_)
            | CoreError::ShapeMismatch(_) => CliError::Input(e.to_string()),
            other => CliError::Core(other),
        }
    }
}
