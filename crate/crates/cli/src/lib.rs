//! Command-line front end: file formats, parameter expressions and the
//! command implementations behind the `quadlie` binary.

pub mod commands;
pub mod error;
pub mod expr;
pub mod format;

pub use commands::{run, run_args, Cli, Command, Output};
pub use error::CliError;
