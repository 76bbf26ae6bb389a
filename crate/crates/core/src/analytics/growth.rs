//! Statistics of the last reset time and of the single-trajectory growth-rate
//! estimator `g = ln(x(t)/x0) / t`.

use crate::error::{Error, Result};
use crate::math;
use crate::params::ModelParams;

fn check(r: f64, t: f64) -> Result<()> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            reason: "must be non-negative and finite",
        });
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "must be non-negative and finite",
        });
    }
    Ok(())
}

/// Mean and variance of `u = t - t_l = min(E, t)`, `E ~ Exp(r)`.
fn elapsed_moments(r: f64, t: f64) -> (f64, f64) {
    if r == 0.0 || t == 0.0 {
        return (t, 0.0);
    }
    let x = r * t;
    // <u> = t (1 - e^{-x}) / x
    let mean = -t * math::expm1(-x) / x;
    // Var u = t^2 v(x), v = 2(1 - e^{-x}(1 + x))/x^2 - ((1 - e^{-x})/x)^2.
    let v = if x < 0.05 {
        const C: [f64; 8] = [
            1.0 / 3.0,
            -1.0 / 3.0,
            11.0 / 60.0,
            -13.0 / 180.0,
            19.0 / 840.0,
            -1.0 / 168.0,
            247.0 / 181_440.0,
            -251.0 / 907_200.0,
        ];
        x * C.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    } else {
        let m = -math::expm1(-x) / x;
        let second = 2.0 * (-math::expm1(-x) - x * math::exp(-x)) / (x * x);
        second - m * m
    };
    (mean, t * t * v)
}

/// `(<t_l>, Var[t_l])` for the last reset time before `t` under Poissonian
/// resetting at rate `r`:
/// `<t_l> = t - (1 - e^{-rt})/r`,
/// `Var[t_l] = 2/r^2 (1 - e^{-rt}(1 + rt)) - ((1 - e^{-rt})/r)^2`.
pub fn last_reset_moments(r: f64, t: f64) -> Result<(f64, f64)> {
    check(r, t)?;
    if r == 0.0 {
        return Ok((0.0, 0.0));
    }
    let (mean_u, var_u) = elapsed_moments(r, t);
    Ok((t - mean_u, var_u))
}

fn check_positive_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t",
            reason: "must be positive and finite",
        })
    }
}

/// Mean of the `N = 1` growth-rate estimator: `(mu - sigma^2/2)(1 - <t_l>/t)`.
pub fn growth_estimator_mean(params: &ModelParams, t: f64) -> Result<f64> {
    params.validate()?;
    check_positive_time(t)?;
    let (mean_u, _) = elapsed_moments(params.r, t);
    Ok(params.log_drift() * mean_u / t)
}

/// Variance of the `N = 1` growth-rate estimator:
/// `(mu - sigma^2/2)^2 Var[t_l]/t^2 + (sigma^2/t)(1 - <t_l>/t)`.
pub fn growth_estimator_variance(params: &ModelParams, t: f64) -> Result<f64> {
    params.validate()?;
    check_positive_time(t)?;
    let (mean_u, var_u) = elapsed_moments(params.r, t);
    let nu = params.log_drift();
    Ok((nu * nu * var_u + params.sigma2 * mean_u) / (t * t))
}
