//! Geometric Brownian motion under Poissonian stochastic resetting.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised in four layers:
//!
//! * [`sde`] generates sample paths, either by stepping the Langevin equation
//!   with an Euler scheme or by drawing the exact renewal solution at a fixed
//!   time through the last-reset-time law.
//! * [`analytics`] evaluates closed forms: moments of every order, the
//!   reset-free propagator, the transient and stationary densities, the
//!   growth-rate estimator statistics, the critical self-averaging time and
//!   the resetting rate that minimises it.
//! * [`stats`] holds the finite-sample estimators applied to simulated
//!   ensembles (sample average, growth-rate estimate, relative variance,
//!   top-share statistic) together with a few goodness-of-fit helpers.
//! * [`quad`] and [`solve`] are the small numerical kernels (adaptive
//!   Gauss–Kronrod quadrature, bisection, golden-section search) the
//!   analytics are built on.
//!
//! Every random draw comes from an [`RngStream`], a counter-based stream keyed
//! by `(master_seed, stream_id)`, so ensembles are bit-reproducible however
//! the trajectories are scheduled.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytics;
mod error;
mod math;
mod params;
pub mod quad;
mod rng;
pub mod sde;
pub mod solve;
pub mod stats;

pub use error::{Error, Result};
pub use params::{ModelParams, SimGrid};
pub use rng::{derive_seed, RngStream};
