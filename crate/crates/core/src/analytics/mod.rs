//! Closed-form results for the reset process.

mod density;
mod growth;
mod moments;
mod regime;
mod self_averaging;

pub use density::{alpha_exponent, gbm_propagator, left_exponent, stationary_pdf, transient_pdf, StationaryLaw};
pub use growth::{growth_estimator_mean, growth_estimator_variance, last_reset_moments};
pub use moments::{
    log_moment, log_moment_ratio, moment, moment_behavior, stationary_moment_ratio, threshold_rate, MomentBehavior,
    MomentOrder,
};
pub use regime::{classify_regime, Regime, RegimeKind};
pub use self_averaging::{
    analytic_relative_variance, critical_time, critical_time_frozen_approx, critical_time_unstable_approx,
    min_self_averaging_sample, optimal_reset_rate, CriticalTime, CriticalTimeMethod,
};

/// `|r - r_m| < DEGENERATE_TOL * max(1, |r_m|)` is treated as `r == r_m`.
pub const DEGENERATE_TOL: f64 = 1e-9;

#[inline]
pub(crate) fn is_degenerate(r: f64, r_m: f64) -> bool {
    (r - r_m).abs() < DEGENERATE_TOL * r_m.abs().max(1.0)
}
