//! Command-line driver for `brannan-core`: argument grammar, a rayon
//! executor, JSON and CSV renderings and the four commands.
//!
//! The binary is a thin wrapper over [`cmd::run`], so everything it does is
//! also callable in-process.

pub mod args;
pub mod cmd;
pub mod exec;
pub mod format;
pub mod parse;

pub use args::Cli;
pub use cmd::{run, CliError, Exit, Output};
pub use exec::Pool;
