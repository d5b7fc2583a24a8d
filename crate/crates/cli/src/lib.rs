//! Library side of the `specball` command-line tool.

pub mod commands;
pub mod io;
pub mod json;
pub mod sample;

pub use io::{emit_matrix, parse_matrix, read_matrix, MatrixDocument};
pub use sample::sample_omega;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] specball::Error),
}

impl CliError {
    /// 3 for numerical failures, 2 for bad input or unmet preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numeric() => 3,
            _ => 2,
        }
    }
}
