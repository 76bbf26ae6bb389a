//! Densities of the position: the reset-free log-normal propagator, the
//! finite-time density with resetting and its non-equilibrium steady state.

use crate::error::{Error, Result};
use crate::math;
use crate::params::ModelParams;
use crate::quad::{self, QuadOptions};

fn require_noise(params: &ModelParams) -> Result<()> {
    params.validate()?;
    if params.sigma2 == 0.0 {
        Err(Error::ZeroNoise)
    } else {
        Ok(())
    }
}

fn discriminant_root(params: &ModelParams) -> f64 {
    let nu = params.log_drift();
    math::sqrt(nu * nu + 2.0 * params.r * params.sigma2)
}

/// Tail exponent `alpha`: the positive root of
/// `(sigma^2/2) a^2 + (mu - sigma^2/2) a - r = 0`.
pub fn alpha_exponent(params: &ModelParams) -> Result<f64> {
    require_noise(params)?;
    let nu = params.log_drift();
    let root = discriminant_root(params);
    // root - nu cancels for nu > 0 and small r; use the rationalised form.
    Ok(if nu > 0.0 {
        2.0 * params.r / (root + nu)
    } else {
        (root - nu) / params.sigma2
    })
}

/// `beta = (sqrt(nu^2 + 2 r sigma^2) + nu) / sigma^2`, so that the steady state
/// behaves like `(x/x0)^(beta - 1)` below `x0`.
pub fn left_exponent(params: &ModelParams) -> Result<f64> {
    require_noise(params)?;
    let nu = params.log_drift();
    let root = discriminant_root(params);
    Ok(if nu < 0.0 {
        2.0 * params.r / (root - nu)
    } else {
        (root + nu) / params.sigma2
    })
}

fn lognormal_density(params: &ModelParams, x: f64, t: f64) -> f64 {
    if x <= 0.0 || t <= 0.0 {
        return 0.0;
    }
    let var = params.sigma2 * t;
    let z = math::ln(x / params.x0) - params.log_drift() * t;
    math::exp(-z * z / (2.0 * var)) / (x * math::SQRT_2PI * math::sqrt(var))
}

/// Reset-free propagator `P0(x, t | x0)`, a log-normal density in `x`.
pub fn gbm_propagator(params: &ModelParams, x: f64, t: f64) -> Result<f64> {
    require_noise(params)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "must be positive and finite",
        });
    }
    Ok(lognormal_density(params, x, t))
}

/// Density `P_r(x, t | x0) = e^{-rt} P0(x,t) + r int_0^t e^{-ru} P0(x,u) du`.
///
/// The renewal integral is evaluated by adaptive quadrature in `s = sqrt(u)`,
/// which removes the `u^{-1/2}` behaviour of the integrand at `x = x0`.
pub fn transient_pdf(params: &ModelParams, x: f64, t: f64) -> Result<f64> {
    let no_reset = gbm_propagator(params, x, t)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    let r = params.r;
    let survival = math::exp(-r * t);
    if r == 0.0 {
        return Ok(no_reset);
    }
    let integrand = |s: f64| {
        let u = s * s;
        if u <= 0.0 {
            return 0.0;
        }
        2.0 * s * math::exp(-r * u) * lognormal_density(params, x, u)
    };
    let renewal = quad::integrate(integrand, 0.0, math::sqrt(t), QuadOptions::tolerance(1e-10))?;
    Ok(survival * no_reset + r * renewal.value)
}

/// Non-equilibrium steady state of the reset process.
///
/// Two power-law branches joined at `x0`:
/// `norm (x/x0)^(-alpha-1)` above and `norm (x/x0)^(beta-1)` below. The
/// normalisation is computed by quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryLaw {
    pub alpha: f64,
    /// Exponent `beta - 1` of the `x <= x0` branch.
    pub left_exponent: f64,
    pub norm: f64,
    pub x0: f64,
    unscaled_prefactor: f64,
}

impl StationaryLaw {
    pub fn new(params: &ModelParams) -> Result<Self> {
        require_noise(params)?;
        if params.r == 0.0 {
            return Err(Error::NoStationaryState);
        }
        let alpha = alpha_exponent(params)?;
        let beta = left_exponent(params)?;
        let opts = QuadOptions::tolerance(1e-12);
        // In y = ln(x/x0): dx = x0 e^y dy.
        let below = quad::integrate_from_neg_infinity(|y| math::exp(beta * y), 0.0, opts)?;
        let above = quad::integrate_to_infinity(|y| math::exp(-alpha * y), 0.0, opts)?;
        let mass = params.x0 * (below.value + above.value);
        let nu = params.log_drift();
        Ok(StationaryLaw {
            alpha,
            left_exponent: beta - 1.0,
            norm: 1.0 / mass,
            x0: params.x0,
            unscaled_prefactor: params.r * params.sigma2 / (alpha * params.sigma2 + nu),
        })
    }

    pub fn beta(&self) -> f64 {
        self.left_exponent + 1.0
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let ratio = x / self.x0;
        if x > self.x0 {
            self.norm * math::powf(ratio, -self.alpha - 1.0)
        } else {
            self.norm * math::powf(ratio, self.left_exponent)
        }
    }

    /// Distribution function, integrating the branches in closed form with
    /// the numerically computed normalisation.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let beta = self.beta();
        let ratio = x / self.x0;
        let below = self.norm * self.x0 / beta;
        if x <= self.x0 {
            below * math::powf(ratio, beta)
        } else {
            below + self.norm * self.x0 * (1.0 - math::powf(ratio, -self.alpha)) / self.alpha
        }
    }

    /// Ratio of the normalisation in use to the closed-form prefactor
    /// `r sigma^2 / (alpha sigma^2 + mu - sigma^2/2)` that omits the
    /// `1/(x0 sigma^2)` scale. The two differ by exactly that factor.
    pub fn unscaled_prefactor_ratio(&self) -> f64 {
        self.norm / self.unscaled_prefactor
    }
}

/// Stationary density at `x`; see [`StationaryLaw`].
pub fn stationary_pdf(params: &ModelParams, x: f64) -> Result<f64> {
    Ok(StationaryLaw::new(params)?.pdf(x))
}
