//! Flat TOML experiment configuration.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use srgbm_core::{ModelParams, SimGrid};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    SinglePath,
    ErgodicitySweep,
    SelfAveraging,
    RegimesTimeseries,
    AnalyticsTable,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::SinglePath,
        Experiment::ErgodicitySweep,
        Experiment::SelfAveraging,
        Experiment::RegimesTimeseries,
        Experiment::AnalyticsTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::SinglePath => "single-path",
            Experiment::ErgodicitySweep => "ergodicity-sweep",
            Experiment::SelfAveraging => "self-averaging",
            Experiment::RegimesTimeseries => "regimes-timeseries",
            Experiment::AnalyticsTable => "analytics-table",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown experiment `{s}`")))
    }
}

/// How endpoint-only experiments draw `x(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampler {
    /// Last-reset-time renewal sampler, no discretisation error.
    Exact,
    /// Full Euler integration on the `dt` grid.
    Euler,
}

/// A fully resolved configuration. Every key is explicit when printed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub mu: f64,
    pub sigma2: f64,
    /// Resetting rate for single-path runs.
    pub r: f64,
    pub x0: f64,
    pub dt: f64,
    pub horizon: f64,
    /// Record every `stride`-th grid point of a trajectory.
    pub stride: usize,
    pub n_list: Vec<u64>,
    pub r_list: Vec<f64>,
    /// One resetting rate per regime for P1% time series.
    pub series_r_list: Vec<f64>,
    pub realizations: usize,
    /// Cohort fraction of the top-share statistic.
    pub fraction: f64,
    pub sampler: Sampler,
    pub master_seed: u64,
    pub output_dir: PathBuf,
    pub emit_plots: bool,
}

/// The same keys, all optional; missing ones take the experiment defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    experiment: Option<Experiment>,
    mu: Option<f64>,
    sigma2: Option<f64>,
    r: Option<f64>,
    x0: Option<f64>,
    dt: Option<f64>,
    horizon: Option<f64>,
    stride: Option<usize>,
    n_list: Option<Vec<u64>>,
    r_list: Option<Vec<f64>>,
    series_r_list: Option<Vec<f64>>,
    realizations: Option<usize>,
    fraction: Option<f64>,
    sampler: Option<Sampler>,
    master_seed: Option<u64>,
    output_dir: Option<PathBuf>,
    emit_plots: Option<bool>,
}

/// `0, 0.002, ..., 0.1`.
pub fn default_r_grid() -> Vec<f64> {
    (0..=50).map(|k| k as f64 / 500.0).collect()
}

impl ExperimentConfig {
    /// Desk-scale defaults. Full-scale runs use `horizon = 100000` and
    /// `realizations = 10000`.
    pub fn defaults(experiment: Experiment) -> Self {
        let mut c = ExperimentConfig {
            experiment,
            mu: 0.02,
            sigma2: 0.01,
            r: 0.02,
            x0: 1.0,
            dt: 0.01,
            horizon: 1000.0,
            stride: 1,
            n_list: vec![1, 100, 1000, 10_000],
            r_list: default_r_grid(),
            series_r_list: vec![0.01, 0.03, 0.08],
            realizations: 100,
            fraction: 0.01,
            sampler: Sampler::Exact,
            master_seed: 20_200_917,
            output_dir: PathBuf::from("out"),
            emit_plots: false,
        };
        match experiment {
            Experiment::SinglePath => {
                c.mu = 0.05;
                c.sigma2 = 0.02;
                c.r = 0.16;
                c.horizon = 100.0;
                c.n_list = vec![1];
                c.realizations = 1;
            }
            Experiment::ErgodicitySweep => {
                c.horizon = 10_000.0;
            }
            Experiment::SelfAveraging => {
                c.realizations = 1;
            }
            Experiment::RegimesTimeseries => {
                c.stride = 100;
                c.n_list = vec![1000];
                c.realizations = 16;
            }
            Experiment::AnalyticsTable => {
                c.r_list = vec![0.01, 0.02, 0.03, 0.05, 0.08];
                c.horizon = 100.0;
                c.realizations = 20_000;
            }
        }
        c
    }

    /// Parses TOML text. The experiment comes from the file or, failing that,
    /// from `fallback`; a file naming a different experiment than `expected`
    /// is rejected.
    pub fn from_toml(text: &str, fallback: Experiment, expected: Option<&[Experiment]>) -> Result<Self> {
        let partial: PartialConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        let experiment = partial.experiment.unwrap_or(fallback);
        if let Some(allowed) = expected {
            if !allowed.contains(&experiment) {
                return Err(HarnessError::Config(format!(
                    "configuration is for `{experiment}`, which this subcommand does not run"
                )));
            }
        }
        let d = ExperimentConfig::defaults(experiment);
        let c = ExperimentConfig {
            experiment,
            mu: partial.mu.unwrap_or(d.mu),
            sigma2: partial.sigma2.unwrap_or(d.sigma2),
            r: partial.r.unwrap_or(d.r),
            x0: partial.x0.unwrap_or(d.x0),
            dt: partial.dt.unwrap_or(d.dt),
            horizon: partial.horizon.unwrap_or(d.horizon),
            stride: partial.stride.unwrap_or(d.stride),
            n_list: partial.n_list.unwrap_or(d.n_list),
            r_list: partial.r_list.unwrap_or(d.r_list),
            series_r_list: partial.series_r_list.unwrap_or(d.series_r_list),
            realizations: partial.realizations.unwrap_or(d.realizations),
            fraction: partial.fraction.unwrap_or(d.fraction),
            sampler: partial.sampler.unwrap_or(d.sampler),
            master_seed: partial.master_seed.unwrap_or(d.master_seed),
            output_dir: partial.output_dir.unwrap_or(d.output_dir),
            emit_plots: partial.emit_plots.unwrap_or(d.emit_plots),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path, fallback: Experiment, expected: Option<&[Experiment]>) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml(&text, fallback, expected)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serialises")
    }

    /// Default configuration as commented TOML.
    pub fn render_default(experiment: Experiment) -> String {
        format!(
            "# srgbm {} configuration (desk scale).\n\
             # Full-scale runs: horizon = 100000, realizations = 10000.\n{}",
            experiment,
            ExperimentConfig::defaults(experiment).to_toml()
        )
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if self.n_list.is_empty() || self.r_list.is_empty() || self.series_r_list.is_empty() {
            return bad("n_list, r_list and series_r_list must be non-empty".into());
        }
        if self.realizations == 0 {
            return bad("realizations must be at least 1".into());
        }
        if self.n_list.contains(&0) {
            return bad("sample sizes in n_list must be at least 1".into());
        }
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            return bad("fraction must lie in (0, 1]".into());
        }
        let grid = self.grid().map_err(|e| HarnessError::Config(e.to_string()))?;
        let rates = std::iter::once(self.r)
            .chain(self.r_list.iter().copied())
            .chain(self.series_r_list.iter().copied());
        for r in rates {
            let p = ModelParams::new(self.mu, self.sigma2, r, self.x0)
                .map_err(|e| HarnessError::Config(format!("r = {r}: {e}")))?;
            grid.check(&p)
                .map_err(|e| HarnessError::Config(format!("r = {r}: {e}")))?;
        }
        Ok(())
    }

    pub fn params(&self, r: f64) -> ModelParams {
        ModelParams::new(self.mu, self.sigma2, r, self.x0).expect("validated configuration")
    }

    pub fn grid(&self) -> srgbm_core::Result<SimGrid> {
        SimGrid::with_horizon(self.dt, self.horizon)?.with_stride(self.stride)
    }

    /// SHA-256 of the canonical TOML with `output_dir` blanked, so the hash
    /// identifies what was computed rather than where it was written.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output_dir = PathBuf::new();
        let digest = Sha256::digest(canonical.to_toml().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
