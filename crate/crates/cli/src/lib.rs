//! Command-line front end of `tswave`: configuration, subcommands and the
//! acceptance checks behind `reproduce`.

pub mod commands;
pub mod config;
pub mod criteria;
pub mod output;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("error [{code}]: {source}", code = .source.code())]
    Solver {
        #[from]
        source: tswave::Error,
    },
    #[error("criterion {0} not met")]
    CriterionFailed(String),
}

impl CliError {
    /// Process exit status: 1 for configuration and input errors, 2 for solver failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Solver { source } if source.is_input_error() => 1,
            CliError::Solver { .. } | CliError::CriterionFailed(_) => 2,
        }
    }
}
