use srgbm_core::analytics::{moment, moment_behavior, MomentOrder};
use srgbm_core::sde::exact_positions;
use srgbm_core::stats::mean_stderr;
use srgbm_core::derive_seed;

use super::ExperimentOutput;
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::table::ResultTable;

/// Long-time behaviour of the first two moments for each `r`, the closed
/// form at the horizon and a Monte Carlo estimate from `realizations` exact
/// draws (shared between `m = 1` and `m = 2`).
pub fn run_analytics_table(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let t = config.horizon;
    let mut table = ResultTable::new(&["r", "m", "behavior", "rate_or_limit", "analytic", "mc", "se"]);
    for (ri, &r) in config.r_list.iter().enumerate() {
        let params = config.params(r);
        let xs = exact_positions(&params, t, config.realizations, derive_seed(config.master_seed, &[ri as u64]))?;
        for m in [MomentOrder::FIRST, MomentOrder::SECOND] {
            let behavior = moment_behavior(&params, m);
            let powers: Vec<f64> = xs.iter().map(|x| x.powi(m.get() as i32)).collect();
            let (mc, se) = if powers.len() >= 2 {
                mean_stderr(&powers)?
            } else {
                (powers[0], f64::NAN)
            };
            table.push(vec![
                r.into(),
                u64::from(m.get()).into(),
                behavior.label().into(),
                behavior.value().into(),
                moment(&params, m, t).into(),
                mc.into(),
                se.into(),
            ]);
        }
    }
    Ok(ExperimentOutput {
        table,
        chart: None,
        warnings: Vec::new(),
    })
}
