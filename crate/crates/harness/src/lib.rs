//! Experiment harness for `srgbm-core`: TOML configuration, the experiment
//! registry, CSV result tables, SVG charts and the `srgbm` command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod plot;
pub mod table;

pub use config::{Experiment, ExperimentConfig, Sampler};
pub use error::{HarnessError, Result};
pub use table::{Cell, ResultTable};
