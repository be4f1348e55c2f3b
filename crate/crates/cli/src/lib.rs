//! Experiment driver for the NOMA ranking-accuracy library: key=value
//! configs, grid sweeps run in parallel, CSV output and figure presets.

pub mod cli;
pub mod config;
mod error;
pub mod output;
pub mod presets;
pub mod run;

pub use config::{Experiment, Kind, ModelChoice, Settings};
pub use error::CliError;
pub use output::ResultRow;
pub use presets::{preset, Figure};
pub use run::{run, run_all, RunOutput};
