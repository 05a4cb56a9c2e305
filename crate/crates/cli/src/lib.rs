//! File formats, report documents and command implementations behind the
//! `hopfkit` binary.

pub mod commands;
pub mod format;
pub mod report;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_STRUCTURAL: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error(transparent)]
    Core(#[from] hopfkit::Error),
}

impl CliError {
    /// Axiom failures are negative verdicts; everything else is structural.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(hopfkit::Error::Axiom(_)) | CliError::Core(hopfkit::Error::NoAntipode(_)) => EXIT_NEGATIVE,
            _ => EXIT_STRUCTURAL,
        }
    }
}
