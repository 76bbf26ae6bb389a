use rayon::prelude::*;
use srgbm_core::analytics::classify_regime;
use srgbm_core::sde::{exact_positions, EulerStepper};
use srgbm_core::stats::{median_over_realizations, quantile, top_share, EnsembleSnapshot};
use srgbm_core::{derive_seed, ModelParams, RngStream, SimGrid};

use super::{cell_seed, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::plot::{Chart, Series};
use crate::table::ResultTable;

/// Top-share statistic of one sample of walkers over time.
#[derive(Debug, Clone, PartialEq)]
pub struct PTopSeries {
    pub times: Vec<f64>,
    pub p_top: Vec<f64>,
}

/// Advances `n` Euler walkers in lockstep and records the top-`fraction`
/// share at every recorded grid point (every `stride` steps and the last
/// one). Walker `i` runs on `RngStream::new(seed, i)`, so it follows exactly
/// the path `simulate_euler` would produce for that stream.
pub fn p_top_series(params: &ModelParams, grid: &SimGrid, n: usize, fraction: f64, seed: u64) -> Result<PTopSeries> {
    let mut walkers = (0..n as u64)
        .map(|i| EulerStepper::new(params, grid, RngStream::new(seed, i)))
        .collect::<srgbm_core::Result<Vec<_>>>()?;
    let share = |t: f64, walkers: &[EulerStepper]| -> Result<f64> {
        let snap = EnsembleSnapshot::new(t, walkers.iter().map(EulerStepper::position).collect())?;
        Ok(top_share(&snap, fraction)?.p_top)
    };
    let mut times = vec![0.0];
    let mut p_top = vec![share(0.0, &walkers)?];
    let mut done = 0;
    while done < grid.n_steps {
        let chunk = grid.stride.min(grid.n_steps - done);
        for w in walkers.iter_mut() {
            for step in w.by_ref().take(chunk) {
                step?;
            }
        }
        done += chunk;
        let t = done as f64 * grid.dt;
        times.push(t);
        p_top.push(share(t, &walkers)?);
    }
    Ok(PTopSeries { times, p_top })
}

struct Band {
    median: f64,
    q05: f64,
    q95: f64,
}

fn band(values: &[f64]) -> Result<Band> {
    Ok(Band {
        median: median_over_realizations(values)?,
        q05: quantile(values, 0.05)?,
        q95: quantile(values, 0.95)?,
    })
}

/// P1% dynamics per regime. Rows with `series = time` follow one sample of
/// `N` Euler walkers per realization for each rate in `series_r_list`; rows
/// with `series = rate` give the horizon value for every rate in `r_list`
/// from the exact sampler. Each row carries the median and the 5th/95th
/// percentiles over realizations.
pub fn run_regimes_timeseries(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let grid = config.grid()?;
    let t_end = grid.horizon();
    let reps = config.realizations;
    let mut table = ResultTable::new(&[
        "series",
        "N",
        "r",
        "t",
        "p_top_median",
        "p_top_q05",
        "p_top_q95",
        "regime",
    ]);
    let mut chart_series = Vec::new();

    for (ni, &n) in config.n_list.iter().enumerate() {
        let cells: Vec<(usize, usize)> = (0..config.series_r_list.len())
            .flat_map(|ri| (0..reps).map(move |k| (ri, k)))
            .collect();
        let runs: Vec<PTopSeries> = cells
            .par_iter()
            .map(|&(ri, k)| {
                let params = config.params(config.series_r_list[ri]);
                p_top_series(&params, &grid, n as usize, config.fraction, cell_seed(config.master_seed, ri, ni, k))
            })
            .collect::<Result<_>>()?;
        for (ri, &r) in config.series_r_list.iter().enumerate() {
            let regime = classify_regime(&config.params(r)).tag.label();
            let group = &runs[ri * reps..(ri + 1) * reps];
            let mut points = Vec::with_capacity(group[0].times.len());
            for (j, &t) in group[0].times.iter().enumerate() {
                let values: Vec<f64> = group.iter().map(|s| s.p_top[j]).collect();
                let b = band(&values)?;
                points.push((t, b.median));
                table.push(vec![
                    "time".into(),
                    n.into(),
                    r.into(),
                    t.into(),
                    b.median.into(),
                    b.q05.into(),
                    b.q95.into(),
                    regime.into(),
                ]);
            }
            if ni == 0 {
                chart_series.push(Series {
                    label: format!("r = {r} ({regime})"),
                    points,
                });
            }
        }

        let rate_seed = derive_seed(config.master_seed, &[u64::MAX]);
        let cells: Vec<(usize, usize)> = (0..config.r_list.len())
            .flat_map(|ri| (0..reps).map(move |k| (ri, k)))
            .collect();
        let shares: Vec<f64> = cells
            .par_iter()
            .map(|&(ri, k)| {
                let params = config.params(config.r_list[ri]);
                let xs = exact_positions(&params, t_end, n as usize, cell_seed(rate_seed, ri, ni, k))?;
                Ok(top_share(&EnsembleSnapshot::new(t_end, xs)?, config.fraction)?.p_top)
            })
            .collect::<Result<_>>()?;
        for (ri, &r) in config.r_list.iter().enumerate() {
            let b = band(&shares[ri * reps..(ri + 1) * reps])?;
            table.push(vec![
                "rate".into(),
                n.into(),
                r.into(),
                t_end.into(),
                b.median.into(),
                b.q05.into(),
                b.q95.into(),
                classify_regime(&config.params(r)).tag.label().into(),
            ]);
        }
    }

    let chart = Chart {
        title: format!("Top {}% share, N = {}", 100.0 * config.fraction, config.n_list[0]),
        x_label: "t".into(),
        y_label: "P_top (median)".into(),
        series: chart_series,
        ..Chart::default()
    };
    Ok(ExperimentOutput {
        table,
        chart: Some(chart),
        warnings: Vec::new(),
    })
}
