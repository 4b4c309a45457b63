use std::io;

use thiserror::Error;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lotka_core::Error),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
    #[error("{failed} of {total} rows failed")]
    Rows { failed: usize, total: usize },
    #[error("{failed} of {total} checks failed")]
    Checks { failed: usize, total: usize },
    #[error("time limit of {seconds} s exceeded")]
    Timeout { seconds: f64 },
}

impl CliError {
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Io(e) if e.kind() == io::ErrorKind::BrokenPipe)
    }

    pub fn exit_code(&self) -> i32 {
        use lotka_core::Error as E;
        match self {
            CliError::Core(E::Domain { .. } | E::StepLimit { .. }) => EXIT_USAGE,
            CliError::Core(E::Interrupted { .. }) | CliError::Timeout { .. } => EXIT_TIMEOUT,
            CliError::Core(_) | CliError::Io(_) | CliError::Rows { .. } | CliError::Checks { .. } => {
                EXIT_FAILURE
            }
        }
    }
}
