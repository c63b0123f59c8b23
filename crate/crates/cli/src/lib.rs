//! Batch runner for the `onsager` command: loads targets from a TOML config
//! or the command line, runs the verification suites and emits one JSON
//! record per check.

use std::path::PathBuf;

use thiserror::Error;

pub mod config;
pub mod run;

pub use config::{SuiteConfig, Target, TargetSpec};
pub use run::{run_suite, run_target, Record, RunReport};

/// Problems that stop a run before any check executes. All map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{line}: {msg}", path.display())]
    Config { path: PathBuf, line: usize, msg: String },
    #[error("{}: {source}", path.display())]
    Model { path: PathBuf, source: onsager_core::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub const EXIT_CODE: u8 = 2;
}
