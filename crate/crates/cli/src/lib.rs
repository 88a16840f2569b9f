//! Command-line front end for `hwbound-core`: matrix files, threaded Monte
//! Carlo runs and text/CSV reports.

pub mod commands;
pub mod config;
pub mod format;
pub mod matrix_file;
pub mod parallel;

pub use commands::{run, CliError, Outcome};
pub use config::RunConfig;
