//! Command-line front end: flag and config parsing, unit conversion,
//! dispatch into the computation library, and table/CSV/JSON output.
//!
//! Exit codes follow a fixed contract: 0 on success, 2 for usage errors
//! (bad flags, malformed values, missing inputs), 3 for domain and math
//! errors (poles, missing double-well structure, step-size violations).

use std::fmt;

pub mod cli;
pub mod commands;
pub mod config;
pub mod records;
pub mod sweep;
pub mod units;

pub use cli::{Cli, Command};

/// Application-level error with its exit code.
#[derive(Debug)]
pub enum AppError {
    /// Invalid invocation; exits with code 2.
    Usage(String),
    /// Mathematically out of domain; exits with code 3.
    Domain(String),
    /// Filesystem trouble; exits with code 1.
    Io(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Domain(_) => 3,
            AppError::Io(_) => 1,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(msg) => write!(f, "{msg}"),
            AppError::Domain(msg) => write!(f, "{msg}"),
            AppError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<zenodwell::Error> for AppError {
    fn from(e: zenodwell::Error) -> Self {
        AppError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e.to_string())
    }
}

/// Run a parsed invocation to completion.
pub fn run(cli: Cli) -> Result<(), AppError> {
    let cfg = match &cli.config {
        Some(path) => config::Config::load(path)?,
        None => config::Config::empty(),
    };
    match &cli.command {
        Command::Dwell(args) => {
            let records = commands::dwell(&args.merged(&cfg))?;
            records::emit(&records, &cli.output)
        }
        Command::Zeno(args) => {
            let records = commands::zeno(&args.merged(&cfg))?;
            records::emit(&records, &cli.output)
        }
        Command::Doublewell(args) => {
            let records = commands::doublewell(&args.merged(&cfg))?;
            records::emit(&records, &cli.output)
        }
        Command::Survival(args) => {
            let records = commands::survival(&args.merged(&cfg))?;
            records::emit(&records, &cli.output)
        }
        Command::Bathsim(args) => {
            let records = commands::bathsim(&args.merged(&cfg))?;
            records::emit(&records, &cli.output)
        }
        Command::Sweep(args) => sweep::run(args, &cfg, &cli.output),
    }
}
