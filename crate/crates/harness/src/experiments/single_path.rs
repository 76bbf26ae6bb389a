use srgbm_core::sde::EulerStepper;
use srgbm_core::RngStream;

use super::ExperimentOutput;
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::plot::{Chart, Series};
use crate::table::ResultTable;

/// One Euler trajectory next to the renewal solution
/// `x0 exp((mu - sigma^2/2)(t - t_l) + sigma (W_t - W_{t_l}))` built from the
/// same Gaussian increments and the same reset times.
pub fn run_single_path(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let params = config.params(config.r);
    let grid = config.grid()?;
    let stepper = EulerStepper::new(&params, &grid, RngStream::new(config.master_seed, 0))?;
    let sqrt_dt = grid.dt.sqrt();
    let (nu, sigma) = (params.log_drift(), params.sigma());

    let mut table = ResultTable::new(&["t", "x_euler", "x_renewal", "is_reset"]);
    table.push(vec![0.0.into(), params.x0.into(), params.x0.into(), false.into()]);
    // Time and Brownian displacement accumulated since the last reset.
    let (mut age, mut w) = (0.0, 0.0);
    for step in stepper {
        let step = step?;
        if step.reset {
            age = 0.0;
            w = 0.0;
        } else {
            age += grid.dt;
            w += sqrt_dt * step.eta;
        }
        if step.step % grid.stride == 0 || step.step == grid.n_steps {
            let renewal = params.x0 * (nu * age + sigma * w).exp();
            table.push(vec![
                (step.step as f64 * grid.dt).into(),
                step.x.into(),
                renewal.into(),
                step.reset.into(),
            ]);
        }
    }

    let t = table.column_f64("t").expect("column exists");
    let chart = Chart {
        title: format!("Single path, mu = {}, sigma^2 = {}, r = {}", params.mu, params.sigma2, params.r),
        x_label: "t".into(),
        y_label: "x(t)".into(),
        series: ["x_euler", "x_renewal"]
            .iter()
            .map(|name| Series {
                label: name.to_string(),
                points: t.iter().copied().zip(table.column_f64(name).expect("column exists")).collect(),
            })
            .collect(),
        ..Chart::default()
    };
    Ok(ExperimentOutput {
        table,
        chart: Some(chart),
        warnings: Vec::new(),
    })
}
