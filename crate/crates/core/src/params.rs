use crate::error::{Error, Result};
use crate::math;

/// Parameters of the reset process `dx = (1-Z) x (mu dt + sigma dW) + Z (x0 - x)`.
///
/// `sigma2` is the noise variance, `r` the Poissonian resetting rate and `x0`
/// both the initial condition and the reset position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub mu: f64,
    pub sigma2: f64,
    pub r: f64,
    pub x0: f64,
}

impl ModelParams {
    pub fn new(mu: f64, sigma2: f64, r: f64, x0: f64) -> Result<Self> {
        let params = ModelParams { mu, sigma2, r, x0 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: "must be finite",
                })
            }
        };
        finite("mu", self.mu)?;
        finite("sigma2", self.sigma2)?;
        finite("r", self.r)?;
        finite("x0", self.x0)?;
        if self.sigma2 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "sigma2",
                reason: "must be non-negative",
            });
        }
        if self.r < 0.0 {
            return Err(Error::InvalidParameter {
                name: "r",
                reason: "must be non-negative",
            });
        }
        if self.x0 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "x0",
                reason: "must be positive",
            });
        }
        Ok(())
    }

    pub fn with_r(self, r: f64) -> Self {
        ModelParams { r, ..self }
    }

    pub fn with_x0(self, x0: f64) -> Self {
        ModelParams { x0, ..self }
    }

    #[inline]
    pub fn sigma(&self) -> f64 {
        math::sqrt(self.sigma2)
    }

    /// Drift of `log x` between resets, `mu - sigma^2/2`.
    #[inline]
    pub fn log_drift(&self) -> f64 {
        self.mu - 0.5 * self.sigma2
    }
}

/// Uniform time grid `t_k = k * dt`, `k = 0..=n_steps`.
///
/// `stride` controls how many grid points a stored [`Trajectory`](crate::sde::Trajectory)
/// keeps: every `stride`-th point plus the final one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimGrid {
    pub dt: f64,
    pub n_steps: usize,
    pub stride: usize,
}

impl SimGrid {
    pub fn new(dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter {
                name: "dt",
                reason: "must be positive and finite",
            });
        }
        if n_steps == 0 {
            return Err(Error::InvalidParameter {
                name: "n_steps",
                reason: "must be at least 1",
            });
        }
        Ok(SimGrid {
            dt,
            n_steps,
            stride: 1,
        })
    }

    /// Grid with step `dt` covering `[0, horizon]`; the step count is rounded
    /// to the nearest integer.
    pub fn with_horizon(dt: f64, horizon: f64) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidParameter {
                name: "horizon",
                reason: "must be positive and finite",
            });
        }
        let steps = horizon / dt;
        if !(steps.is_finite() && steps < 1e15) {
            return Err(Error::InvalidParameter {
                name: "dt",
                reason: "too small for the horizon",
            });
        }
        let n = math::floor(steps + 0.5) as usize;
        SimGrid::new(dt, n.max(1))
    }

    pub fn with_stride(self, stride: usize) -> Result<Self> {
        if stride == 0 {
            return Err(Error::InvalidParameter {
                name: "stride",
                reason: "must be at least 1",
            });
        }
        Ok(SimGrid { stride, ..self })
    }

    #[inline]
    pub fn horizon(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }

    /// Checks that `r * dt` is a valid per-step probability for `params`.
    pub fn check(&self, params: &ModelParams) -> Result<()> {
        params.validate()?;
        let r_dt = params.r * self.dt;
        if r_dt >= 1.0 {
            return Err(Error::ResetProbability { r_dt });
        }
        Ok(())
    }
}
