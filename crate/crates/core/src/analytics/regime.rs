use core::fmt;

use crate::params::ModelParams;

use super::is_degenerate;
use super::moments::{threshold_rate, MomentOrder};

/// Long-time behaviour of a finite sample average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeKind {
    /// `r < mu`: both moments diverge; the sample freezes onto a few walkers.
    Frozen,
    /// `mu < r < 2mu + sigma^2`: the mean converges, the second moment does not.
    UnstableAnnealed,
    /// `r > 2mu + sigma^2`: both moments converge.
    StableAnnealed,
}

impl RegimeKind {
    pub fn label(self) -> &'static str {
        match self {
            RegimeKind::Frozen => "frozen",
            RegimeKind::UnstableAnnealed => "unstable-annealed",
            RegimeKind::StableAnnealed => "stable-annealed",
        }
    }
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub tag: RegimeKind,
    /// First-moment threshold `mu`.
    pub r_1: f64,
    /// Second-moment threshold `2mu + sigma^2`.
    pub r_2: f64,
    /// `r` sits on one of the thresholds; `tag` is then the regime below it.
    pub boundary: bool,
}

pub fn classify_regime(params: &ModelParams) -> Regime {
    let r = params.r;
    let r_1 = threshold_rate(params, MomentOrder::FIRST);
    let r_2 = threshold_rate(params, MomentOrder::SECOND);
    let (tag, boundary) = if is_degenerate(r, r_1) {
        (RegimeKind::Frozen, true)
    } else if r < r_1 {
        (RegimeKind::Frozen, false)
    } else if is_degenerate(r, r_2) {
        (RegimeKind::UnstableAnnealed, true)
    } else if r < r_2 {
        (RegimeKind::UnstableAnnealed, false)
    } else {
        (RegimeKind::StableAnnealed, false)
    };
    Regime {
        tag,
        r_1,
        r_2,
        boundary,
    }
}
