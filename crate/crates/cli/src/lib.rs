//! Fixture loading and the verification commands behind the `skewgba`
//! binary. Every command returns its report as a string so the binary and
//! the tests see byte-identical output.

pub mod commands;
pub mod fixture;

use std::path::Path;

pub use commands::{labelled_space, run, Command, Outcome};
pub use fixture::{parse, Fixture, Object, Options, RingSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] skewgba_core::Error),
}

impl CliError {
    /// Parse, usage and library errors all exit with 2; failed checks are
    /// reported through [`Outcome`] instead.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub fn load(path: &Path) -> Result<Fixture, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}
