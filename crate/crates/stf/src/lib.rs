//! File formats, commands and verification suites for the `stf` tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod json;
pub mod verify;

pub use config::{Config, OutputFormat, Report};
pub use error::CliError;
