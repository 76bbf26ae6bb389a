//! Sample-path generation.
//!
//! Two independent routes produce the law of `x(t)`:
//!
//! * [`simulate_euler`] steps the Langevin equation on a grid. At each step
//!   the walker resets to `x0` with probability `r*dt`, otherwise it takes the
//!   multiplicative Euler step `x <- x (1 + mu dt + sigma sqrt(dt) eta)`. A reset
//!   step applies no diffusive increment.
//! * [`sample_position_exact`] draws the last reset time `t_l` and then the
//!   log-normal renewal solution over `t - t_l`, with no discretisation error.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::math;
use crate::params::{ModelParams, SimGrid};
use crate::rng::RngStream;

/// A discretised sample path.
///
/// `times`/`positions` hold every `stride`-th grid point and always the
/// final one. `reset_steps` lists every grid step (1-based, step `k` ends at
/// `k*dt`) on which the walker was reset, whether or not that point was
/// recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub reset_steps: Vec<usize>,
}

impl Trajectory {
    pub fn final_position(&self) -> f64 {
        *self.positions.last().expect("trajectory has at least one point")
    }
}

/// Time of the most recent renewal before the observation time.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LastResetTime(pub f64);

/// One Euler step as seen by [`EulerStepper`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerStep {
    /// 1-based step index; the step ends at `step * dt`.
    pub step: usize,
    pub reset: bool,
    /// The standard normal variate driving the step, `0.0` on reset steps.
    pub eta: f64,
    /// Position after the step.
    pub x: f64,
}

/// Step-by-step Euler integrator over a [`SimGrid`].
///
/// Each step consumes one uniform variate for the reset decision and, when
/// no reset happens, one standard normal.
#[derive(Debug, Clone)]
pub struct EulerStepper {
    x0: f64,
    drift: f64,
    diffusion: f64,
    reset_prob: f64,
    n_steps: usize,
    step: usize,
    x: f64,
    rng: ChaCha8Rng,
}

impl EulerStepper {
    pub fn new(params: &ModelParams, grid: &SimGrid, stream: RngStream) -> Result<Self> {
        grid.check(params)?;
        Ok(EulerStepper {
            x0: params.x0,
            drift: params.mu * grid.dt,
            diffusion: params.sigma() * math::sqrt(grid.dt),
            reset_prob: params.r * grid.dt,
            n_steps: grid.n_steps,
            step: 0,
            x: params.x0,
            rng: stream.rng(),
        })
    }

    pub fn position(&self) -> f64 {
        self.x
    }

    fn advance(&mut self) -> Result<EulerStep> {
        self.step += 1;
        let u: f64 = self.rng.random();
        if u < self.reset_prob {
            self.x = self.x0;
            return Ok(EulerStep {
                step: self.step,
                reset: true,
                eta: 0.0,
                x: self.x,
            });
        }
        let eta: f64 = StandardNormal.sample(&mut self.rng);
        let factor = 1.0 + self.drift + self.diffusion * eta;
        if factor <= 0.0 {
            return Err(Error::StepTooCoarse {
                step: self.step,
                factor,
            });
        }
        self.x *= factor;
        Ok(EulerStep {
            step: self.step,
            reset: false,
            eta,
            x: self.x,
        })
    }
}

impl Iterator for EulerStepper {
    type Item = Result<EulerStep>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.step >= self.n_steps {
            return None;
        }
        Some(self.advance())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.n_steps - self.step;
        (left, Some(left))
    }
}

/// Euler discretisation of one trajectory driven by `stream`.
pub fn simulate_euler(params: &ModelParams, grid: &SimGrid, stream: RngStream) -> Result<Trajectory> {
    let stepper = EulerStepper::new(params, grid, stream)?;
    let stride = grid.stride.max(1);
    let n_records = grid.n_steps / stride + 2;
    let mut times = Vec::with_capacity(n_records);
    let mut positions = Vec::with_capacity(n_records);
    let mut reset_steps = Vec::new();
    times.push(0.0);
    positions.push(params.x0);
    for step in stepper {
        let step = step?;
        if step.reset {
            reset_steps.push(step.step);
        }
        if step.step % stride == 0 || step.step == grid.n_steps {
            times.push(step.step as f64 * grid.dt);
            positions.push(step.x);
        }
    }
    Ok(Trajectory {
        times,
        positions,
        reset_steps,
    })
}

/// Final position of an Euler trajectory, without storing the path.
pub fn simulate_euler_endpoint(params: &ModelParams, grid: &SimGrid, stream: RngStream) -> Result<f64> {
    let mut stepper = EulerStepper::new(params, grid, stream)?;
    for step in stepper.by_ref() {
        step?;
    }
    Ok(stepper.position())
}

/// `n_traj` Euler trajectories; trajectory `i` is driven by
/// `RngStream::new(master_seed, i)`.
pub fn generate_ensemble(
    params: &ModelParams,
    grid: &SimGrid,
    n_traj: usize,
    master_seed: u64,
) -> Result<Vec<Trajectory>> {
    if n_traj == 0 {
        return Err(Error::InvalidParameter {
            name: "n_traj",
            reason: "must be at least 1",
        });
    }
    (0..n_traj as u64)
        .map(|i| simulate_euler(params, grid, RngStream::new(master_seed, i)))
        .collect()
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t",
            reason: "must be non-negative and finite",
        })
    }
}

/// Draws `t_l` from its mixed law: an atom at 0 of weight `exp(-r t)` and
/// density `r exp(-r (t - t_l))` on `(0, t]`.
///
/// Implemented as `E ~ Exp(r)`, `t_l = t - E` if `E < t`, else 0.
pub fn sample_last_reset_time_with<R: Rng + ?Sized>(t: f64, r: f64, rng: &mut R) -> LastResetTime {
    let e1: f64 = Exp1.sample(rng);
    if r <= 0.0 {
        return LastResetTime(0.0);
    }
    let elapsed = e1 / r;
    if elapsed >= t {
        LastResetTime(0.0)
    } else {
        LastResetTime(t - elapsed)
    }
}

pub fn sample_last_reset_time(t: f64, r: f64, stream: RngStream) -> Result<LastResetTime> {
    check_time(t)?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            reason: "must be non-negative and finite",
        });
    }
    Ok(sample_last_reset_time_with(t, r, &mut stream.rng()))
}

/// Exact draw of `x(t)`: `x0 exp((mu - sigma^2/2) u + sigma sqrt(u) Z)` with
/// `u = t - t_l` the time since the last reset.
pub fn sample_position_exact_with<R: Rng + ?Sized>(params: &ModelParams, t: f64, rng: &mut R) -> f64 {
    let t_l = sample_last_reset_time_with(t, params.r, rng).0;
    let z: f64 = StandardNormal.sample(rng);
    let u = t - t_l;
    if u <= 0.0 {
        return params.x0;
    }
    params.x0 * math::exp(params.log_drift() * u + params.sigma() * math::sqrt(u) * z)
}

pub fn sample_position_exact(params: &ModelParams, t: f64, stream: RngStream) -> Result<f64> {
    params.validate()?;
    check_time(t)?;
    Ok(sample_position_exact_with(params, t, &mut stream.rng()))
}

/// `n` exact draws of `x(t)`, draw `i` on `RngStream::new(master_seed, i)`.
pub fn exact_positions(params: &ModelParams, t: f64, n: usize, master_seed: u64) -> Result<Vec<f64>> {
    params.validate()?;
    check_time(t)?;
    Ok((0..n as u64)
        .map(|i| sample_position_exact_with(params, t, &mut RngStream::new(master_seed, i).rng()))
        .collect())
}

/// Final Euler positions of `n` trajectories, trajectory `i` on stream `i`.
pub fn euler_endpoints(params: &ModelParams, grid: &SimGrid, n: usize, master_seed: u64) -> Result<Vec<f64>> {
    (0..n as u64)
        .map(|i| simulate_euler_endpoint(params, grid, RngStream::new(master_seed, i)))
        .collect()
}
