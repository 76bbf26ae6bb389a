//! Scalar root finding and minimisation.

/// Bisection on `[lo, hi]` for a function with `f(lo) < 0 < f(hi)` (or the
/// reverse). Stops once the bracket width is below `x_tol` or after
/// `max_iter` halvings. Returns the midpoint of the final bracket, or `None`
/// if the endpoints do not bracket a sign change.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64, max_iter: usize) -> Option<f64> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || (f_lo < 0.0) == (f_hi < 0.0) {
        return None;
    }
    let lo_negative = f_lo < 0.0;
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= x_tol || mid == lo || mid == hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
/// Returns `(x_min, f_min)`.
pub fn golden_section_minimize<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, x_tol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > x_tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimises `f` on `[a, b]`: scan `n_grid` evenly spaced interior points,
/// then refine by golden section between the neighbours of the best one.
pub fn grid_golden_minimize<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    n_grid: usize,
    x_tol: f64,
) -> (f64, f64) {
    let n = n_grid.max(3);
    let h = (b - a) / (n + 1) as f64;
    let mut best = (1, f64::INFINITY);
    for i in 1..=n {
        let v = f(a + i as f64 * h);
        if v < best.1 {
            best = (i, v);
        }
    }
    let lo = a + (best.0 - 1) as f64 * h;
    let hi = a + (best.0 + 1) as f64 * h;
    golden_section_minimize(f, lo, hi, x_tol)
}
