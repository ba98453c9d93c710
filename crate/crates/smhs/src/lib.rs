//! File formats, configuration and subcommands for the `smhs` command-line tool.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{run, Outcome, RunError, Status};
pub use config::{Command, Format, Options, RunConfig};
pub use report::{write_report, Report, Table};
