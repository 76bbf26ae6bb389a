//! Globally adaptive 15-point Gauss–Kronrod quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! error estimate drops below `max(abs_tol, rel_tol * |I|)`. Semi-infinite
//! ranges are mapped onto `[0, 1)` with `x = a + s / (1 - s)`; the Kronrod
//! rule never evaluates the endpoint `s = 1`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-10,
            max_intervals: 2000,
        }
    }
}

impl QuadOptions {
    pub fn tolerance(rel_tol: f64) -> Self {
        QuadOptions {
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv = [(0.0f64, 0.0f64); 7];
    for (j, &x) in XGK[..7].iter().enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    // QUADPACK's empirical rescaling of the raw Kronrod-Gauss difference.
    if res_asc != 0.0 && error != 0.0 {
        let scale = libm::pow(200.0 * error / res_asc, 1.5);
        error = res_asc * scale.min(1.0);
    }
    let eps_floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && error < eps_floor {
        error = eps_floor;
    }
    Segment { a, b, value, error }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    let mut segments = Vec::with_capacity(64);
    segments.push(kronrod15(&f, a, b));
    loop {
        let (value, error) = segments
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                tolerance: opts.abs_tol.max(opts.rel_tol * value.abs()),
            });
        }
        let tolerance = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= tolerance {
            return Ok(QuadResult {
                value,
                error,
                intervals: segments.len(),
            });
        }
        if segments.len() >= opts.max_intervals {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                tolerance,
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("non-empty");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a.min(seg.b) || mid >= seg.a.max(seg.b) {
            // Interval cannot be split further in floating point.
            return Err(Error::Quadrature {
                estimate: value,
                error,
                tolerance,
            });
        }
        segments.push(kronrod15(&f, seg.a, mid));
        segments.push(kronrod15(&f, mid, seg.b));
    }
}

/// Integrates `f` over `[a, +inf)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, opts: QuadOptions) -> Result<QuadResult> {
    integrate(
        |s| {
            let w = 1.0 - s;
            let v = f(a + s / w) / (w * w);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        opts,
    )
}

/// Integrates `f` over `(-inf, b]`.
pub fn integrate_from_neg_infinity<F: Fn(f64) -> f64>(f: F, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    integrate_to_infinity(|y| f(b - (y - b)), b, opts)
}

/// Integrates `f` over `(-inf, +inf)`, split at `split`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, split: f64, opts: QuadOptions) -> Result<QuadResult> {
    let left = integrate_from_neg_infinity(&f, split, opts)?;
    let right = integrate_to_infinity(&f, split, opts)?;
    Ok(QuadResult {
        value: left.value + right.value,
        error: left.error + right.error,
        intervals: left.intervals + right.intervals,
    })
}
