//! Relative variance of the sample average and the critical self-averaging
//! time `t_c`, defined by `<x^2(t_c)> / <x(t_c)>^2 = N + 1`.

use crate::error::{Error, Result};
use crate::math;
use crate::params::ModelParams;
use crate::solve;

use super::is_degenerate;
use super::moments::{log_moment_ratio, stationary_moment_ratio, threshold_rate, MomentOrder};

/// `R_N(t) = (<x^2> - <x>^2) / (N <x>^2)`.
pub fn analytic_relative_variance(params: &ModelParams, n: u64, t: f64) -> Result<f64> {
    params.validate()?;
    check_n(n, 1)?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "must be non-negative and finite",
        });
    }
    Ok(math::expm1(log_moment_ratio(params, t)) / n as f64)
}

fn check_n(n: u64, min: u64) -> Result<()> {
    if n < min {
        Err(Error::InvalidParameter {
            name: "N",
            reason: if min == 1 {
                "sample size must be at least 1"
            } else {
                "sample size must be at least 2"
            },
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalTimeMethod {
    ExactRoot,
    FrozenApprox,
    UnstableApprox,
    /// The moment ratio never reaches `N + 1`: the sample self-averages forever.
    Never,
}

impl CriticalTimeMethod {
    pub fn label(self) -> &'static str {
        match self {
            CriticalTimeMethod::ExactRoot => "exact_root",
            CriticalTimeMethod::FrozenApprox => "frozen_approx",
            CriticalTimeMethod::UnstableApprox => "unstable_approx",
            CriticalTimeMethod::Never => "never",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalTime {
    /// `f64::INFINITY` when `method == Never`.
    pub t_c: f64,
    pub method: CriticalTimeMethod,
}

impl CriticalTime {
    pub fn is_finite(&self) -> bool {
        self.t_c.is_finite()
    }
}

const T_MIN: f64 = 1e-6;
const T_CAP: f64 = 1e300;
const LOG_T_TOL: f64 = 1e-12;

/// Exact `t_c` from the closed-form moments: bracket in `t` by doubling, then
/// bisect on `ln t`.
pub fn critical_time(params: &ModelParams, n: u64) -> Result<CriticalTime> {
    params.validate()?;
    check_n(n, 1)?;
    let target = math::ln(n as f64 + 1.0);
    let unit = params.with_x0(1.0);
    if let Some(limit) = stationary_moment_ratio(&unit) {
        if limit <= n as f64 + 1.0 {
            return Ok(CriticalTime {
                t_c: f64::INFINITY,
                method: CriticalTimeMethod::Never,
            });
        }
    }
    let excess = |t: f64| log_moment_ratio(&unit, t) - target;
    if excess(T_MIN) >= 0.0 {
        return Err(Error::Bracketing {
            target: n as f64 + 1.0,
            t_max: T_MIN,
        });
    }
    let mut hi = 1.0;
    while excess(hi) <= 0.0 {
        hi *= 2.0;
        if hi > T_CAP {
            return Err(Error::Bracketing {
                target: n as f64 + 1.0,
                t_max: hi,
            });
        }
    }
    let lo = if hi > 1.0 { hi / 2.0 } else { T_MIN };
    let log_root = solve::bisect(|lt| excess(math::exp(lt)), math::ln(lo), math::ln(hi), LOG_T_TOL, 400).ok_or(
        Error::Bracketing {
            target: n as f64 + 1.0,
            t_max: hi,
        },
    )?;
    Ok(CriticalTime {
        t_c: math::exp(log_root),
        method: CriticalTimeMethod::ExactRoot,
    })
}

/// Frozen-regime (`r < mu`) approximation
/// `t_c ~ ln[(N+1) mu^2 (2mu+s2-r) / ((mu-r)^2 (2mu+s2))] / (r + s2)`.
pub fn critical_time_frozen_approx(params: &ModelParams, n: u64) -> Result<f64> {
    params.validate()?;
    check_n(n, 1)?;
    let (mu, s2, r) = (params.mu, params.sigma2, params.r);
    if !(r < mu) || is_degenerate(r, mu) {
        return Err(Error::OutsideRegime("frozen approximation needs r < mu"));
    }
    let r2 = 2.0 * mu + s2;
    let arg = (n as f64 + 1.0) * mu * mu * (r2 - r) / ((mu - r) * (mu - r) * r2);
    Ok(math::ln(arg) / (r + s2))
}

/// Unstable-annealed (`mu < r < 2mu + s2`) approximation
/// `t_c ~ ln[(N+1) r^2 (2mu+s2-r) / ((r-mu)^2 (2mu+s2))] / (2mu + s2 - r)`.
pub fn critical_time_unstable_approx(params: &ModelParams, n: u64) -> Result<f64> {
    params.validate()?;
    check_n(n, 1)?;
    let (mu, s2, r) = (params.mu, params.sigma2, params.r);
    let r2 = 2.0 * mu + s2;
    if !(r > mu && r < r2) || is_degenerate(r, mu) || is_degenerate(r, r2) {
        return Err(Error::OutsideRegime("unstable approximation needs mu < r < 2mu + sigma^2"));
    }
    let arg = (n as f64 + 1.0) * r * r * (r2 - r) / ((r - mu) * (r - mu) * r2);
    Ok(math::ln(arg) / (r2 - r))
}

/// Smallest `N` with `N > (mu^2 + r s2) / ((r - 2mu - s2) r)`, the sample
/// size above which a stable-annealed system self-averages at all times.
pub fn min_self_averaging_sample(params: &ModelParams) -> Result<u64> {
    params.validate()?;
    let r = params.r;
    let r2 = threshold_rate(params, MomentOrder::SECOND);
    if !(r > r2) || is_degenerate(r, r2) || r == 0.0 {
        return Err(Error::OutsideRegime("needs r > 2mu + sigma^2"));
    }
    let threshold = (params.mu * params.mu + r * params.sigma2) / ((r - r2) * r);
    if !(threshold.is_finite() && threshold < 9.0e15) {
        return Err(Error::OutsideRegime("threshold sample size is not representable"));
    }
    Ok(math::floor(threshold) as u64 + 1)
}

/// Resetting rate in `(0, 2mu + s2)` minimising the exact `t_c` for sample
/// size `N`: coarse grid, then golden-section refinement.
pub fn optimal_reset_rate(params: &ModelParams, n: u64) -> Result<f64> {
    params.validate()?;
    check_n(n, 2)?;
    let r2 = threshold_rate(params, MomentOrder::SECOND);
    if !(r2 > 0.0) {
        return Err(Error::OutsideRegime("needs 2mu + sigma^2 > 0"));
    }
    let mut failure = None;
    let mut any_finite = false;
    let objective = |r: f64| match critical_time(&params.with_r(r), n) {
        Ok(tc) => {
            any_finite |= tc.is_finite();
            tc.t_c
        }
        Err(e) => {
            failure.get_or_insert(e);
            f64::INFINITY
        }
    };
    let (r_star, _) = solve::grid_golden_minimize(objective, 0.0, r2, 64, 1e-10 * r2);
    if let Some(e) = failure {
        return Err(e);
    }
    if !any_finite {
        return Err(Error::Optimization);
    }
    Ok(r_star)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: f64) -> ModelParams {
        ModelParams::new(0.02, 0.01, r, 1.0).unwrap()
    }

    #[test]
    fn relative_variance_trivial_cases() {
        assert_eq!(analytic_relative_variance(&p(0.05), 10, 0.0).unwrap(), 0.0);
        let still = ModelParams::new(0.07, 0.0, 0.0, 3.0).unwrap();
        for &t in &[1.0, 100.0, 1e4] {
            assert!(analytic_relative_variance(&still, 1, t).unwrap().abs() < 1e-10);
        }
        assert!(analytic_relative_variance(&p(0.05), 0, 1.0).is_err());
    }

    #[test]
    fn stable_regime_plateau() {
        let v = analytic_relative_variance(&p(0.08), 100, 5000.0).unwrap();
        assert!((v - 0.005).abs() < 1e-12, "{v}");
    }

    #[test]
    fn reset_free_critical_time_is_closed_form() {
        // Pure GBM: ratio = exp(sigma^2 t).
        let tc = critical_time(&p(0.0), 10_000).unwrap();
        assert_eq!(tc.method, CriticalTimeMethod::ExactRoot);
        assert!((tc.t_c / (100.0 * 10_001f64.ln()) - 1.0).abs() < 1e-10);
        let approx = critical_time_frozen_approx(&p(0.0), 10_000).unwrap();
        assert!((approx - tc.t_c).abs() < 1e-8, "{approx}");
    }

    #[test]
    fn never_in_stable_regime_for_large_samples() {
        // Stationary ratio 18.85 just above the threshold rate.
        let finite = critical_time(&p(0.051), 10).unwrap();
        assert!(finite.is_finite());
        assert_eq!(critical_time(&p(0.051), 18).unwrap().method, CriticalTimeMethod::Never);
        let never = critical_time(&p(0.08), 1_000_000).unwrap();
        assert_eq!(never.method, CriticalTimeMethod::Never);
        assert!(never.t_c.is_infinite());
        // Limit ratio 1.5: N = 1 reaches 2 never; limit <= N+1.
        assert_eq!(critical_time(&p(0.08), 1).unwrap().method, CriticalTimeMethod::Never);
        let static_walkers = ModelParams::new(0.1, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(critical_time(&static_walkers, 5).unwrap().method, CriticalTimeMethod::Never);
    }

    #[test]
    fn root_satisfies_defining_relation() {
        for &r in &[0.0, 0.01, 0.02, 0.03, 0.05, 0.0501] {
            let tc = critical_time(&p(r), 100).unwrap();
            assert!(tc.is_finite());
            let ratio = log_moment_ratio(&p(r), tc.t_c).exp();
            assert!((ratio / 101.0 - 1.0).abs() < 1e-9, "r = {r}: {ratio}");
        }
    }

    #[test]
    fn approximations_reject_other_regimes() {
        assert!(critical_time_frozen_approx(&p(0.02), 10).is_err());
        assert!(critical_time_frozen_approx(&p(0.03), 10).is_err());
        assert!(critical_time_unstable_approx(&p(0.02), 10).is_err());
        assert!(critical_time_unstable_approx(&p(0.01), 10).is_err());
        assert!(critical_time_unstable_approx(&p(0.05), 10).is_err());
        assert!(critical_time_unstable_approx(&p(0.03), 10).is_ok());
    }

    #[test]
    fn minimum_sample_sizes() {
        assert_eq!(min_self_averaging_sample(&p(0.08)).unwrap(), 1);
        assert_eq!(min_self_averaging_sample(&p(0.051)).unwrap(), 18);
        assert!(min_self_averaging_sample(&p(0.05)).is_err());
        assert!(min_self_averaging_sample(&p(0.03)).is_err());
        // Diverges as r approaches the threshold from above.
        let close = min_self_averaging_sample(&p(0.050_001)).unwrap();
        assert_eq!(close, 18_000);
    }

    #[test]
    fn optimum_requires_two_walkers() {
        assert!(optimal_reset_rate(&p(0.0), 1).is_err());
        let bad = ModelParams::new(-0.1, 0.01, 0.0, 1.0).unwrap();
        assert!(matches!(optimal_reset_rate(&bad, 10), Err(Error::OutsideRegime(_))));
    }
}
