//! Writing experiment artefacts: `<experiment>.csv`, optional
//! `<experiment>.svg`, `config.toml` and `meta.txt`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::experiments::ExperimentOutput;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Reproducibility record. Only `created_unix` differs between reruns of
/// the same configuration.
pub fn meta_text(config: &ExperimentConfig, output: &ExperimentOutput, created_unix: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "experiment = {}", config.experiment);
    let _ = writeln!(s, "config_sha256 = {}", config.hash());
    let _ = writeln!(s, "master_seed = {}", config.master_seed);
    let _ = writeln!(s, "version = srgbm-harness {VERSION}");
    let _ = writeln!(s, "rows = {}", output.table.rows.len());
    let _ = writeln!(s, "created_unix = {created_unix}");
    for w in &output.warnings {
        let _ = writeln!(s, "warning = {w}");
    }
    s
}

/// Writes every artefact into `config.output_dir`, creating it if needed,
/// and returns the paths written.
pub fn write_outputs(config: &ExperimentConfig, output: &ExperimentOutput) -> Result<Vec<PathBuf>> {
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let name = config.experiment.name();
    let mut written = Vec::new();

    let csv = dir.join(format!("{name}.csv"));
    output.table.save(&csv)?;
    written.push(csv);

    if config.emit_plots {
        if let Some(chart) = &output.chart {
            let svg = dir.join(format!("{name}.svg"));
            chart.save(&svg)?;
            written.push(svg);
        }
    }

    let created = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    written.push(write_text(dir, "config.toml", &config.to_toml())?);
    written.push(write_text(dir, "meta.txt", &meta_text(config, output, created))?);
    Ok(written)
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?;
    Ok(path)
}
