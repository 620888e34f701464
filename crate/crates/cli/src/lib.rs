//! Scenario runner for the symbol-time-compression OFDM experiments.
//!
//! Each scenario kind reproduces one result figure as CSV series plus a
//! `summary.csv` of headline numbers.

mod args;
mod error;
mod runner;
mod scenario;

pub use args::{parse_args, Command};
pub use error::CliError;
pub use runner::{run, write_summary, RunReport, SummaryRow};
pub use scenario::{Kind, Scenario};
