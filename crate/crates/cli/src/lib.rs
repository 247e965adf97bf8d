//! Batch checks and parameter scans over the `modsuper` library.

pub mod checks;
pub mod commands;
pub mod config;
pub mod report;

use thiserror::Error;

pub use config::{Cli, Command, RunConfig};
pub use report::{Check, Report, REPORT_SCHEMA};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const SIZE_LIMIT: i32 = 3;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => exit::USAGE,
        }
    }
}

/// What to print and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let config = RunConfig::resolve(&cli.options)?;
    if config.dump.is_some() && !matches!(cli.command, Command::Sigma { .. } | Command::Endodim) {
        return Err(CliError::Usage("--dump applies to sigma and endodim only".into()));
    }
    let report = match &cli.command {
        Command::Schema => return Ok(Outcome { output: REPORT_SCHEMA.to_string(), code: exit::PASS }),
        Command::Rbound => commands::rbound(&config)?,
        Command::Endodim => commands::endodim(&config)?,
        Command::Sigma { extras } => commands::sigma(&config, extras)?,
        Command::Verify { criteria, inject_sign_bug } => commands::verify(&config, criteria, *inject_sign_bug)?,
        Command::Scan => commands::scan(&config)?,
    };
    let output = match config.format {
        config::Format::Table => report.to_table(),
        config::Format::Json => report.to_json() + "\n",
    };
    let code = if report.any_failed() {
        exit::FAIL
    } else if report.all_skipped() {
        exit::SIZE_LIMIT
    } else {
        exit::PASS
    };
    Ok(Outcome { output, code })
}
