use rayon::prelude::*;
use srgbm_core::analytics::{critical_time, growth_estimator_mean, moment, MomentOrder};
use srgbm_core::stats::{median_over_realizations, sample_average, EnsembleSnapshot};

use super::{cell_seed, endpoint_sample, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::plot::{Chart, Series};
use crate::table::ResultTable;

/// Long-time sample average as a function of `r` for each sample size: the
/// median over `realizations` independent samples of `N` walkers.
///
/// `time_avg_reference` is `x0 exp(t E[g_est])` for a single walker, the
/// typical value a lone trajectory settles to.
pub fn run_ergodicity_sweep(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let grid = config.grid()?;
    let t = grid.horizon();
    let cells: Vec<(usize, usize, usize)> = (0..config.r_list.len())
        .flat_map(|ri| {
            (0..config.n_list.len()).flat_map(move |ni| (0..config.realizations).map(move |k| (ri, ni, k)))
        })
        .collect();
    let averages: Vec<f64> = cells
        .par_iter()
        .map(|&(ri, ni, k)| {
            let params = config.params(config.r_list[ri]);
            let n = config.n_list[ni] as usize;
            let xs = endpoint_sample(config.sampler, &params, &grid, n, cell_seed(config.master_seed, ri, ni, k))?;
            Ok(sample_average(&EnsembleSnapshot::new(t, xs)?))
        })
        .collect::<Result<_>>()?;

    let mut table = ResultTable::new(&["r", "N", "median_sample_avg", "analytic_mean", "time_avg_reference"]);
    let mut warnings = Vec::new();
    let mut curves = vec![Vec::new(); config.n_list.len()];
    for (ri, &r) in config.r_list.iter().enumerate() {
        let params = config.params(r);
        let analytic = moment(&params, MomentOrder::FIRST, t);
        let reference = params.x0 * (t * growth_estimator_mean(&params, t)?).exp();
        for (ni, &n) in config.n_list.iter().enumerate() {
            let start = (ri * config.n_list.len() + ni) * config.realizations;
            let median = median_over_realizations(&averages[start..start + config.realizations])?;
            table.push(vec![r.into(), n.into(), median.into(), analytic.into(), reference.into()]);
            curves[ni].push((r, median));
            let tc = critical_time(&params, n)?;
            if tc.is_finite() && t < tc.t_c {
                warnings.push(format!(
                    "r = {r}, N = {n}: horizon {t} is below the critical time {:.1}; the sample average is still ensemble-like",
                    tc.t_c
                ));
            }
        }
    }

    let mut series: Vec<Series> = config
        .n_list
        .iter()
        .zip(curves)
        .map(|(n, points)| Series {
            label: format!("N = {n}"),
            points,
        })
        .collect();
    series.push(Series {
        label: "ensemble mean".into(),
        points: config
            .r_list
            .iter()
            .zip(table.column_f64("analytic_mean").expect("column exists").iter().step_by(config.n_list.len()))
            .map(|(&r, &m)| (r, m))
            .collect(),
    });
    let chart = Chart {
        title: format!("Median sample average at t = {t}"),
        x_label: "r".into(),
        y_label: "<x(t)>_N".into(),
        log_y: true,
        series,
        markers: vec![(config.mu, "r = mu".into())],
        ..Chart::default()
    };
    Ok(ExperimentOutput {
        table,
        chart: Some(chart),
        warnings,
    })
}
