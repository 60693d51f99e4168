//! Command-line front end: argument model, JSON/CSV/SVG writers, and the
//! dispatcher used by the `poncelet` binary.

pub mod args;
pub mod exact;
pub mod output;
pub mod report;
pub mod run;

pub use run::{execute, CliError};
