//! Command-line interface.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::{HarnessError, Result};
use crate::{experiments, output};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SRGBM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "srgbm", version, about = "Stochastic resetting geometric Brownian motion experiments")]
pub struct Cli {
    /// TOML configuration; keys left out take the experiment defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override the master seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Override the output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long, global = true)]
    pub plots: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trajectory experiments: single-path (default) or regimes-timeseries.
    Simulate {
        /// Experiment to run when no configuration file names one.
        #[arg(value_parser = ["single-path", "regimes-timeseries"])]
        experiment: Option<String>,
    },
    /// Long-time sample average versus resetting rate.
    Sweep,
    /// Critical self-averaging time over the (r, N) grid.
    Tc,
    /// Moment behaviour table with Monte Carlo check.
    Table,
    /// Print a default configuration.
    PrintConfig {
        #[arg(default_value = "single-path")]
        experiment: String,
    },
}

impl Command {
    fn experiments(&self) -> (Experiment, &'static [Experiment]) {
        match self {
            Command::Simulate { experiment } => {
                let fallback = match experiment.as_deref() {
                    Some("regimes-timeseries") => Experiment::RegimesTimeseries,
                    _ => Experiment::SinglePath,
                };
                (fallback, &[Experiment::SinglePath, Experiment::RegimesTimeseries])
            }
            Command::Sweep => (Experiment::ErgodicitySweep, &[Experiment::ErgodicitySweep]),
            Command::Tc => (Experiment::SelfAveraging, &[Experiment::SelfAveraging]),
            Command::Table => (Experiment::AnalyticsTable, &[Experiment::AnalyticsTable]),
            Command::PrintConfig { .. } => unreachable!("print-config runs no experiment"),
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| HarnessError::Config(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    // A pool built earlier in the same process keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Resolves the configuration for `cli` and runs it, writing artefacts.
/// Returns the text to print on standard output.
pub fn run(cli: Cli) -> Result<String> {
    if let Command::PrintConfig { experiment } = &cli.command {
        return Ok(ExperimentConfig::render_default(experiment.parse()?));
    }
    configure_threads()?;
    let (fallback, allowed) = cli.command.experiments();
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path, fallback, Some(allowed))?,
        None => ExperimentConfig::defaults(fallback),
    };
    if let Command::Simulate {
        experiment: Some(name),
    } = &cli.command
    {
        if cli.config.is_some() && name != config.experiment.name() {
            return Err(HarnessError::Config(format!(
                "`simulate {name}` conflicts with the configured experiment `{}`",
                config.experiment
            )));
        }
    }
    if let Some(seed) = cli.seed {
        config.master_seed = seed;
    }
    if let Some(out) = cli.out {
        config.output_dir = out;
    }
    config.emit_plots |= cli.plots;
    config.validate()?;

    let result = experiments::run(&config)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let written = output::write_outputs(&config, &result)?;
    Ok(written
        .iter()
        .map(|p| format!("wrote {}\n", p.display()))
        .collect())
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
