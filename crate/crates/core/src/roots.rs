//! Bracketed scalar root finding.

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;

/// Stopping width for a bracket around `x`: `rel * (1 + |x|)`.
pub(crate) fn width_tolerance(rel: f64, x: f64) -> f64 {
    rel * (1.0 + x.abs())
}

/// Grows `[center - half_width, center + half_width]` by doubling the half
/// width until `f` changes sign across it.
pub(crate) fn expand_bracket<F>(
    mut f: F,
    center: f64,
    half_width: f64,
    max_doublings: usize,
) -> Result<((f64, f64), (f64, f64))>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut half = half_width;
    for _ in 0..=max_doublings {
        let lo = center - half;
        let hi = center + half;
        let f_lo = f(lo)?;
        let f_hi = f(hi)?;
        if f_lo == 0.0 || f_hi == 0.0 || f_lo.signum() != f_hi.signum() {
            return Ok(((lo, f_lo), (hi, f_hi)));
        }
        half *= 2.0;
    }
    Err(Error::RootFinding(format!(
        "no sign change around {center} after {max_doublings} doublings"
    )))
}

/// Plain bisection down to a bracket no wider than `width_tolerance(rel, x)`.
pub(crate) fn bisect<F>(mut f: F, lo: (f64, f64), hi: (f64, f64), rel: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let ((mut a, mut fa), (mut b, fb)) = (lo, hi);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFinding(format!(
            "[{a}, {b}] does not bracket a root"
        )));
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= width_tolerance(rel, mid) || mid == a || mid == b {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Err(Error::RootFinding("bisection did not converge".into()))
}

/// Safeguarded secant iteration with bisection fallback (Brent's scheme
/// without the inverse quadratic step).
///
/// Stops when the bracket is narrower than `width_tolerance(rel, x)` or the
/// function value is exactly zero.
pub(crate) fn secant_bisect<F>(mut f: F, lo: (f64, f64), hi: (f64, f64), rel: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let ((mut a, mut fa), (mut b, mut fb)) = (lo, hi);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFinding(format!(
            "[{a}, {b}] does not bracket a root"
        )));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 0.5 * width_tolerance(rel, b);
        let half = 0.5 * (c - b);
        if half.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let mut p = 2.0 * half * s;
            let mut q = 1.0 - s;
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * half * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        fb = f(b)?;
    }
    Err(Error::RootFinding(
        "secant/bisection did not converge".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cubic_root() {
        let f = |x: f64| Ok(x * x * x - x - 2.0);
        let lo = (1.0, f(1.0).unwrap());
        let hi = (2.0, f(2.0).unwrap());
        let r1 = secant_bisect(f, lo, hi, 1e-14).unwrap();
        let r2 = bisect(f, lo, hi, 1e-14).unwrap();
        assert!((r1 - 1.521_379_706_804_567_6).abs() < 1e-13);
        assert!((r2 - 1.521_379_706_804_567_6).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_bracket() {
        let f = |x: f64| Ok(x * x + 1.0);
        assert!(secant_bisect(f, (-1.0, 2.0), (1.0, 2.0), 1e-12).is_err());
    }

    #[test]
    fn expands_until_sign_change() {
        let ((lo, _), (hi, _)) = expand_bracket(|x| Ok(37.5 - x), 0.0, 1.0, 60).unwrap();
        assert!(lo < 37.5 && hi > 37.5);
        assert!(expand_bracket(|_| Ok(1.0), 0.0, 1.0, 5).is_err());
    }
}
