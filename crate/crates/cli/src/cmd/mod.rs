//! Command implementations. Each returns the text for standard output and
//! an exit status; failures carry their own status.

use std::fmt;

use brannan_core::minimize::SearchConfig;

use crate::args::{Cli, Command};
use crate::exec::Pool;

pub mod constants;
pub mod minimize;
pub mod surface;
pub mod verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Numerical = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { exit: Exit::Usage, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<brannan_core::Error> for CliError {
    fn from(e: brannan_core::Error) -> Self {
        let exit = if e.is_numerical() { Exit::Numerical } else { Exit::Fail };
        CliError { exit, message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub exit: Exit,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let pool = Pool::new(cli.threads).map_err(|e| CliError::usage(format!("cannot start {} threads: {e}", cli.threads)))?;
    match &cli.command {
        Command::Constants(a) => constants::run(a, &pool),
        Command::Verify(a) => verify::run(a, cli.seed, &pool),
        Command::Surface(a) => surface::run(a, &pool),
        Command::Minimize(a) => minimize::run(a, &pool),
    }
}

pub(crate) fn search_cfg(pairs: &[(String, String)]) -> Result<SearchConfig, CliError> {
    let mut cfg = SearchConfig::default();
    for (k, v) in pairs {
        cfg.set(k, v).map_err(CliError::usage)?;
    }
    Ok(cfg)
}
