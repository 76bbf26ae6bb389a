use srgbm_core::analytics::{
    classify_regime, critical_time, critical_time_frozen_approx, critical_time_unstable_approx, optimal_reset_rate,
    RegimeKind,
};

use super::ExperimentOutput;
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::plot::{Chart, Series};
use crate::table::ResultTable;

/// Critical self-averaging time over the `(r, N)` grid, with both closed
/// approximations where their regime applies (NaN elsewhere) and the
/// minimising rate `r_star` for each `N` (NaN for `N = 1`).
pub fn run_self_averaging(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut r_star = Vec::with_capacity(config.n_list.len());
    for &n in &config.n_list {
        r_star.push(if n >= 2 {
            optimal_reset_rate(&config.params(0.0), n)?
        } else {
            f64::NAN
        });
    }

    let mut table = ResultTable::new(&["r", "N", "t_c_exact", "t_c_frozen", "t_c_unstable", "regime", "r_star"]);
    let mut curves = vec![Vec::new(); config.n_list.len()];
    let mut never = 0usize;
    for &r in &config.r_list {
        let params = config.params(r);
        let regime = classify_regime(&params);
        for (ni, &n) in config.n_list.iter().enumerate() {
            let exact = critical_time(&params, n)?;
            if !exact.is_finite() {
                never += 1;
            }
            let frozen = match regime.tag {
                RegimeKind::Frozen => critical_time_frozen_approx(&params, n).unwrap_or(f64::NAN),
                _ => f64::NAN,
            };
            let unstable = match regime.tag {
                RegimeKind::UnstableAnnealed => critical_time_unstable_approx(&params, n).unwrap_or(f64::NAN),
                _ => f64::NAN,
            };
            table.push(vec![
                r.into(),
                n.into(),
                exact.t_c.into(),
                frozen.into(),
                unstable.into(),
                regime.tag.label().into(),
                r_star[ni].into(),
            ]);
            curves[ni].push((r, exact.t_c));
        }
    }

    let mut warnings = Vec::new();
    if never > 0 {
        warnings.push(format!("{never} cells never stop self-averaging (t_c_exact = inf)"));
    }
    let chart = Chart {
        title: "Critical self-averaging time".into(),
        x_label: "r".into(),
        y_label: "t_c".into(),
        log_y: true,
        series: config
            .n_list
            .iter()
            .zip(curves)
            .map(|(n, points)| Series {
                label: format!("N = {n}"),
                points,
            })
            .collect(),
        markers: vec![
            (config.mu, "r = mu".into()),
            (2.0 * config.mu + config.sigma2, "r = 2mu + s2".into()),
        ],
        ..Chart::default()
    };
    Ok(ExperimentOutput {
        table,
        chart: Some(chart),
        warnings,
    })
}
