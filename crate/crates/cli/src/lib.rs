//! Harness around the `vnfplace` solvers: scenario generation, single runs,
//! multi-seed comparisons, exact fronts and size sweeps, all written as
//! JSON/CSV files.

pub mod commands;
pub mod error;
pub mod report;

pub use commands::{run, Cli};
pub use error::CliError;
