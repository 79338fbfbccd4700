//! Command-line front end for the additive-lab experiments: configuration,
//! set and function file formats, report rendering and the command runners.

pub mod config;
pub mod io;
pub mod report;
pub mod run;

pub use config::{Command, ConfigError, ExperimentConfig, Format};
pub use report::Report;
pub use run::run;
