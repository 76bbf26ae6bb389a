//! Finite-sample estimators over ensembles of walkers.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Positions of `N` independent walkers observed at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSnapshot {
    t: f64,
    positions: Vec<f64>,
}

impl EnsembleSnapshot {
    pub fn new(t: f64, positions: Vec<f64>) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "t",
                reason: "must be non-negative and finite",
            });
        }
        if positions.is_empty() {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        if positions.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(Error::InvalidSample);
        }
        Ok(EnsembleSnapshot { t, positions })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }
}

/// Finite sample average `<x(t)>_N`.
pub fn sample_average(snapshot: &EnsembleSnapshot) -> f64 {
    snapshot.positions.iter().sum::<f64>() / snapshot.n() as f64
}

fn check_positive_t(t: f64) -> Result<()> {
    if t > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t",
            reason: "growth rate needs t > 0",
        })
    }
}

/// Growth-rate estimator `g_est(t, N) = ln(<x(t)>_N / x0) / t`.
pub fn growth_rate_estimate(snapshot: &EnsembleSnapshot, x0: f64) -> Result<f64> {
    check_positive_t(snapshot.t)?;
    if !(x0.is_finite() && x0 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "x0",
            reason: "must be positive",
        });
    }
    Ok(math::ln(sample_average(snapshot) / x0) / snapshot.t)
}

/// Smallest and largest single-walker growth rate `ln(x_i/x0)/t`; the
/// sample estimator always lies between the two.
pub fn growth_rate_bounds(snapshot: &EnsembleSnapshot, x0: f64) -> Result<(f64, f64)> {
    check_positive_t(snapshot.t)?;
    let (lo, hi) = snapshot
        .positions
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    Ok((math::ln(lo / x0) / snapshot.t, math::ln(hi / x0) / snapshot.t))
}

/// Mean and unbiased sample variance.
pub fn mean_variance(values: &[f64]) -> Result<(f64, f64)> {
    if values.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: values.len(),
        });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
    Ok((mean, ss / (n - 1.0)))
}

/// Mean and its standard error.
pub fn mean_stderr(values: &[f64]) -> Result<(f64, f64)> {
    let (mean, var) = mean_variance(values)?;
    Ok((mean, math::sqrt(var / values.len() as f64)))
}

/// Sample variance together with its standard error, estimated from the
/// fourth central moment: `se^2 = (m4 - s^4 (n-3)/(n-1)) / n`.
pub fn variance_stderr(values: &[f64]) -> Result<(f64, f64)> {
    let (mean, var) = mean_variance(values)?;
    let n = values.len() as f64;
    let m4 = values.iter().map(|v| {
            let d2 = (v - mean) * (v - mean);
            d2 * d2
        }).sum::<f64>() / n;
    let se2 = (m4 - var * var * (n - 3.0) / (n - 1.0)) / n;
    Ok((var, math::sqrt(se2.max(0.0))))
}

/// Relative variance of sample-average realizations: `Var / mean^2`.
pub fn empirical_relative_variance(realizations: &[f64]) -> Result<f64> {
    let (mean, var) = mean_variance(realizations)?;
    if mean == 0.0 {
        return Err(Error::ZeroMean);
    }
    Ok(var / (mean * mean))
}

/// Share of the total held by the largest `cohort_size` walkers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShareReport {
    pub p_top: f64,
    pub cohort_size: usize,
}

/// Top-share statistic: with positions sorted in decreasing order,
/// `p_top = sum_{j <= k} x_j / sum_i x_i` where
/// `k = max(1, floor(N * fraction))`. Ties keep walker order.
pub fn top_share(snapshot: &EnsembleSnapshot, fraction: f64) -> Result<ShareReport> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "fraction",
            reason: "must lie in (0, 1]",
        });
    }
    let n = snapshot.n();
    let cohort_size = (math::floor(n as f64 * fraction) as usize).clamp(1, n);
    let mut sorted = snapshot.positions.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let top: f64 = sorted[..cohort_size].iter().sum();
    let rest: f64 = sorted[cohort_size..].iter().sum();
    Ok(ShareReport {
        p_top: top / (top + rest),
        cohort_size,
    })
}

fn sorted_copy(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Median; the mean of the two middle values for even counts.
pub fn median_over_realizations(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let v = sorted_copy(values);
    let mid = v.len() / 2;
    Ok(if v.len() % 2 == 0 {
        0.5 * (v[mid - 1] + v[mid])
    } else {
        v[mid]
    })
}

/// Quantile with linear interpolation between order statistics
/// (`q (n-1)` positioning).
pub fn quantile(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter {
            name: "q",
            reason: "must lie in [0, 1]",
        });
    }
    let v = sorted_copy(values);
    let pos = q * (v.len() - 1) as f64;
    let lo = math::floor(pos) as usize;
    let hi = (lo + 1).min(v.len() - 1);
    let w = pos - lo as f64;
    Ok(v[lo] * (1.0 - w) + v[hi] * w)
}

/// Two-sample Kolmogorov–Smirnov distance `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let (a, b) = (sorted_copy(a), sorted_copy(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// One-sample Kolmogorov–Smirnov distance against a continuous CDF.
pub fn ks_against_cdf<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let v = sorted_copy(samples);
    let n = v.len() as f64;
    Ok(v.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    }))
}

/// Least-squares slope of `ln(density)` against `ln(x)` for a histogram with
/// logarithmically spaced bins on `[x_min, max(samples)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    pub slope: f64,
    pub intercept: f64,
    pub bins_used: usize,
    pub tail_count: usize,
}

/// Fits the power-law tail of `samples` above `x_min`. Bins holding fewer
/// than `min_count` samples are dropped; bin densities are evaluated at the
/// geometric bin centre.
pub fn log_log_tail_slope(samples: &[f64], x_min: f64, n_bins: usize, min_count: usize) -> Result<TailFit> {
    let tail: Vec<f64> = samples.iter().copied().filter(|&x| x > x_min).collect();
    let x_max = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if tail.len() < 2 || n_bins < 2 || !(x_min > 0.0) {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: tail.len(),
        });
    }
    let (l_min, l_max) = (math::ln(x_min), math::ln(x_max));
    let width = (l_max - l_min) / n_bins as f64;
    let mut counts = alloc::vec![0usize; n_bins];
    for &x in &tail {
        let k = ((math::ln(x) - l_min) / width) as usize;
        counts[k.min(n_bins - 1)] += 1;
    }
    let total = samples.len() as f64;
    let points: Vec<(f64, f64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c >= min_count.max(1))
        .map(|(k, &c)| {
            let lo = math::exp(l_min + k as f64 * width);
            let hi = math::exp(l_min + (k + 1) as f64 * width);
            let density = c as f64 / (total * (hi - lo));
            (l_min + (k as f64 + 0.5) * width, math::ln(density))
        })
        .collect();
    if points.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: points.len(),
        });
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
    let sxx = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
    let slope = sxy / sxx;
    Ok(TailFit {
        slope,
        intercept: my - slope * mx,
        bins_used: points.len(),
        tail_count: tail.len(),
    })
}
