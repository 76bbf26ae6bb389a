use crate::error::{Error, Result};
use crate::math;
use crate::params::ModelParams;

use super::is_degenerate;

/// Order `m >= 1` of a moment `<x^m(t)>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentOrder(u32);

impl MomentOrder {
    pub const FIRST: MomentOrder = MomentOrder(1);
    pub const SECOND: MomentOrder = MomentOrder(2);

    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter {
                name: "m",
                reason: "moment order must be at least 1",
            });
        }
        Ok(MomentOrder(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Resetting rate `r_m = m mu + m(m-1) sigma^2 / 2` at which the `m`-th
/// moment switches from divergent to convergent.
pub fn threshold_rate(params: &ModelParams, m: MomentOrder) -> f64 {
    let m = m.0 as f64;
    m * params.mu + 0.5 * m * (m - 1.0) * params.sigma2
}

/// `ln(<x^m(t)> / x0^m)`, finite for every `t` (no overflow).
fn log_scaled_moment(r: f64, r_m: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    if is_degenerate(r, r_m) {
        return math::ln1p(r * t);
    }
    let delta = r_m - r;
    let dt = delta * t;
    if dt > 1.0 {
        // r_m e^{dt} - r = e^{dt} (r_m - r e^{-dt})
        dt + math::ln(r_m - r * math::exp(-dt)) - math::ln(delta)
    } else {
        // (r_m e^{dt} - r) / delta = 1 + r_m expm1(dt) / delta
        math::ln1p(r_m * math::expm1(dt) / delta)
    }
}

/// Natural log of the `m`-th moment `<x^m(t)>`.
pub fn log_moment(params: &ModelParams, m: MomentOrder, t: f64) -> f64 {
    let r_m = threshold_rate(params, m);
    m.0 as f64 * math::ln(params.x0) + log_scaled_moment(params.r, r_m, t)
}

/// `<x^m(t)> = x0^m [r_m e^{(r_m - r) t} - r] / (r_m - r)`, continued by
/// `x0^m (1 + r t)` at `r = r_m`.
pub fn moment(params: &ModelParams, m: MomentOrder, t: f64) -> f64 {
    math::exp(log_moment(params, m, t))
}

/// `ln(<x^2(t)> / <x(t)>^2)`; independent of `x0`.
pub fn log_moment_ratio(params: &ModelParams, t: f64) -> f64 {
    let r1 = threshold_rate(params, MomentOrder::FIRST);
    let r2 = threshold_rate(params, MomentOrder::SECOND);
    log_scaled_moment(params.r, r2, t) - 2.0 * log_scaled_moment(params.r, r1, t)
}

/// Long-time limit of `<x^2>/<x>^2`, or `None` when the ratio grows without
/// bound.
pub fn stationary_moment_ratio(params: &ModelParams) -> Option<f64> {
    let r = params.r;
    let r1 = threshold_rate(params, MomentOrder::FIRST);
    let r2 = threshold_rate(params, MomentOrder::SECOND);
    if r == 0.0 {
        // Reset-free GBM: ratio is exp(sigma^2 t).
        return if params.sigma2 == 0.0 { Some(1.0) } else { None };
    }
    if r > r2 && !is_degenerate(r, r2) {
        Some((r - r1) * (r - r1) / (r * (r - r2)))
    } else {
        None
    }
}

/// Long-time behaviour of a moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentBehavior {
    /// Grows like `e^{rate t}` with `rate = r_m - r`.
    Exponential { rate: f64 },
    /// `r = r_m`: grows like `x0^m (1 + r t)`.
    Linear { rate: f64 },
    /// Converges to `x0^m r / (r - r_m)`.
    Convergent { limit: f64 },
}

impl MomentBehavior {
    pub fn label(&self) -> &'static str {
        match self {
            MomentBehavior::Exponential { .. } => "exponential",
            MomentBehavior::Linear { .. } => "linear",
            MomentBehavior::Convergent { .. } => "convergent",
        }
    }

    /// The rate (exponential and linear) or the limit (convergent).
    pub fn value(&self) -> f64 {
        match *self {
            MomentBehavior::Exponential { rate } | MomentBehavior::Linear { rate } => rate,
            MomentBehavior::Convergent { limit } => limit,
        }
    }
}

pub fn moment_behavior(params: &ModelParams, m: MomentOrder) -> MomentBehavior {
    let r_m = threshold_rate(params, m);
    let r = params.r;
    if is_degenerate(r, r_m) {
        MomentBehavior::Linear { rate: r }
    } else if r < r_m {
        MomentBehavior::Exponential { rate: r_m - r }
    } else {
        MomentBehavior::Convergent {
            limit: math::powf(params.x0, m.0 as f64) * r / (r - r_m),
        }
    }
}
