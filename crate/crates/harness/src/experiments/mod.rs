//! Experiment registry. Each runner turns a resolved configuration into a
//! result table, an optional chart and a list of warnings.

mod moments_table;
mod regimes;
mod self_averaging;
mod single_path;
mod sweep;

use srgbm_core::sde::{euler_endpoints, exact_positions};
use srgbm_core::{derive_seed, ModelParams, SimGrid};

use crate::config::{Experiment, ExperimentConfig, Sampler};
use crate::error::Result;
use crate::plot::Chart;
use crate::table::ResultTable;

pub use moments_table::run_analytics_table;
pub use regimes::{p_top_series, run_regimes_timeseries, PTopSeries};
pub use self_averaging::run_self_averaging;
pub use single_path::run_single_path;
pub use sweep::run_ergodicity_sweep;

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub table: ResultTable,
    pub chart: Option<Chart>,
    pub warnings: Vec<String>,
}

pub fn run(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    match config.experiment {
        Experiment::SinglePath => run_single_path(config),
        Experiment::ErgodicitySweep => run_ergodicity_sweep(config),
        Experiment::SelfAveraging => run_self_averaging(config),
        Experiment::RegimesTimeseries => run_regimes_timeseries(config),
        Experiment::AnalyticsTable => run_analytics_table(config),
    }
}

/// Seed of one (rate, sample size, realization) cell.
pub fn cell_seed(master_seed: u64, r_index: usize, n_index: usize, realization: usize) -> u64 {
    derive_seed(master_seed, &[r_index as u64, n_index as u64, realization as u64])
}

/// `n` independent positions at the grid horizon; walker `i` uses stream `i`
/// of `seed`.
pub fn endpoint_sample(sampler: Sampler, params: &ModelParams, grid: &SimGrid, n: usize, seed: u64) -> Result<Vec<f64>> {
    Ok(match sampler {
        Sampler::Exact => exact_positions(params, grid.horizon(), n, seed)?,
        Sampler::Euler => euler_endpoints(params, grid, n, seed)?,
    })
}
