//! Configuration-driven experiment runner for `paritybus`.

pub mod config;
pub mod error;
pub mod output;
pub mod registry;
pub mod run;

pub use config::{ExperimentConfig, Kind, Resolved};
pub use error::CliError;
pub use output::{Column, RunOutput, Table};
pub use run::{check, execute, ColumnDelta};
