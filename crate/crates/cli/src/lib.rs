//! Library half of the `schurproc` binary: configuration, commands and
//! output writers. Each command writes its result to a sink and reports an
//! [`Outcome`].

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};

pub mod cells;
pub mod commands;
pub mod config;
pub mod svg;
pub mod verify;

pub use config::{CommandKind, Format, Model, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed input or an impossible combination. Exit code 2.
    Usage(String),
    /// A computation failed or a check did not pass. Exit code 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<schur_process::Error> for CliError {
    fn from(e: schur_process::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a successful run produced: `passed` is false when `verify` found a failing suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub message: Option<String>,
}

impl Outcome {
    pub fn ok() -> Self {
        Outcome { passed: true, message: None }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Runs a resolved configuration, writing results to `--out` or `stdout`
/// and diagnostics to `stderr`.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<Outcome> {
    match &cfg.out {
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(f);
            let o = dispatch(cfg, &mut w, stderr)?;
            w.flush()?;
            Ok(o)
        }
        None => dispatch(cfg, stdout, stderr),
    }
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<Outcome> {
    match cfg.command {
        Some(CommandKind::Verify) => verify::run(cfg, out, err),
        Some(CommandKind::Kernel) => commands::kernel(cfg, out, err),
        Some(CommandKind::Density) => commands::density(cfg, out),
        Some(CommandKind::LimitShape) => commands::limit_shape(cfg, out),
        Some(CommandKind::Sample) => commands::sample(cfg, out, err),
        None => Err(CliError::Usage("no subcommand given".into())),
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
