//! Configuration parsing, output formats and subcommands of the
//! `quartic-prop` command-line tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use error::{CliError, Result};
