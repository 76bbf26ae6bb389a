use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("per-step reset probability r*dt = {r_dt} must be below 1")]
    ResetProbability { r_dt: f64 },

    /// An Euler factor `1 + mu*dt + sigma*sqrt(dt)*eta` was not positive.
    #[error("time step too coarse: multiplicative factor {factor} at step {step} is not positive")]
    StepTooCoarse { step: usize, factor: f64 },

    #[error("operation requires sigma^2 > 0")]
    ZeroNoise,

    #[error("no stationary state without resetting (r = 0)")]
    NoStationaryState,

    #[error("parameters outside the validity range: {0}")]
    OutsideRegime(&'static str),

    #[error("could not bracket the critical time: ratio target {target} not reached by t = {t_max}")]
    Bracketing { target: f64, t_max: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error {error} above tolerance {tolerance}")]
    Quadrature {
        estimate: f64,
        error: f64,
        tolerance: f64,
    },

    #[error("critical time is infinite over the whole search interval")]
    Optimization,

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("sample values must be positive and finite")]
    InvalidSample,

    #[error("mean of realizations is zero")]
    ZeroMean,
}

impl Error {
    /// True for failures of a numerical method (root bracketing, quadrature,
    /// discretisation) as opposed to bad inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::StepTooCoarse { .. }
                | Error::Bracketing { .. }
                | Error::Quadrature { .. }
                | Error::Optimization
        )
    }
}
