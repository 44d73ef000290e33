//! Special-function kernel: log-Gamma, Beta, Pochhammer symbols, binomial
//! coefficients and the Gauss hypergeometric function `2F1` on the real line.
//!
//! `hyp2f1` picks the first path that converges, in this order:
//!
//! 1. terminating series, when `a` or `b` is a nonpositive integer (any real `z`);
//! 2. the Pfaff transform `z -> z/(z-1)`, when `z < 0`;
//! 3. the defining power series, when `|z| < 1`;
//! 4. the `1/z` connection formula, when `z < -1` and `a - b` is not an integer.
//!
//! Gamma ratios are always accumulated in log space and exponentiated once.

use std::f64::consts::PI;

use crate::error::{Error, HypPath, Result};

/// Series stop once `|term| <= SERIES_REL_TOL * |partial sum|` (twice in a row).
pub const SERIES_REL_TOL: f64 = 1e-16;
/// Hard cap on the number of series terms before a path is declared divergent.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// Returns `Some(m)` when `x == -m` for a nonnegative integer `m`.
pub fn nonpositive_integer(x: f64) -> Option<u32> {
    if x <= 0.0 && x.fract() == 0.0 && x >= -f64::from(u32::MAX) {
        Some((-x) as u32)
    } else {
        None
    }
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`, with `(x)_0 = 1`.
///
/// Nonpositive integers `x = -m` take the exact combinatorial branch:
/// `0` for `k > m`, otherwise `(-1)^k m!/(m-k)!`.
pub fn pochhammer(x: f64, k: u32) -> f64 {
    if let Some(m) = nonpositive_integer(x) {
        if k > m {
            return 0.0;
        }
        return (0..k).fold(1.0, |acc, i| -acc * f64::from(m - i));
    }
    (0..k).fold(1.0, |acc, i| acc * (x + f64::from(i)))
}

/// Binomial coefficient `n choose k` as a float; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// `ln B(p, q)` for positive arguments.
pub fn log_beta(p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::Domain(format!(
            "beta requires positive arguments, got ({p}, {q})"
        )));
    }
    Ok(log_gamma(p)? + log_gamma(q)? - log_gamma(p + q)?)
}

/// `B(p, q) = Γ(p)Γ(q)/Γ(p+q)`.
pub fn beta_fn(p: f64, q: f64) -> Result<f64> {
    log_beta(p, q).map(f64::exp)
}

/// `Π Γ(num_i) / Π Γ(den_j)` over arbitrary real arguments, via signed
/// log-Gamma. A pole in the denominator makes the ratio zero.
fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    if den.iter().any(|&x| nonpositive_integer(x).is_some()) {
        return Ok(0.0);
    }
    if let Some(&x) = num.iter().find(|&&x| nonpositive_integer(x).is_some()) {
        return Err(Error::Domain(format!("Gamma pole at {x} in numerator")));
    }
    let mut log_abs = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (lg, s) = libm::lgamma_r(x);
        log_abs += lg;
        sign *= f64::from(s);
    }
    for &x in den {
        let (lg, s) = libm::lgamma_r(x);
        log_abs -= lg;
        sign *= f64::from(s);
    }
    Ok(sign * log_abs.exp())
}

/// Parameters of `2F1(a, b; c; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Args {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl Hyp2F1Args {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Result<Self> {
        let args = Self { a, b, c, z };
        args.validate()?;
        Ok(args)
    }

    fn validate(&self) -> Result<()> {
        if [self.a, self.b, self.c, self.z]
            .iter()
            .any(|v| !v.is_finite())
        {
            return Err(Error::Domain(format!(
                "non-finite 2F1 argument in {self:?}"
            )));
        }
        if nonpositive_integer(self.c).is_some() {
            return Err(Error::Domain(format!(
                "2F1 parameter c = {} is a nonpositive integer",
                self.c
            )));
        }
        Ok(())
    }

    /// Orders `(a, b)` canonically so every path is exactly symmetric in them.
    ///
    /// A terminating parameter goes first (the shorter polynomial if both are);
    /// otherwise the smaller value goes first, which is the choice that keeps
    /// the Pfaff-mapped series convergent at `w -> 1`.
    fn canonical(self) -> Self {
        let swap = match (nonpositive_integer(self.a), nonpositive_integer(self.b)) {
            (Some(ma), Some(mb)) => mb < ma,
            (None, Some(_)) => true,
            (Some(_), None) => false,
            (None, None) => self.b < self.a,
        };
        if swap {
            Self {
                a: self.b,
                b: self.a,
                ..self
            }
        } else {
            self
        }
    }
}

/// A summed series and the sum of its absolute terms.
#[derive(Debug, Clone, Copy)]
struct SeriesSum {
    value: f64,
    magnitude: f64,
}

fn terminating_series(degree: u32, b: f64, c: f64, z: f64) -> SeriesSum {
    let a = -f64::from(degree);
    let mut term = 1.0;
    let mut sum = SeriesSum {
        value: 1.0,
        magnitude: 1.0,
    };
    for k in 0..degree {
        let k = f64::from(k);
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum.value += term;
        sum.magnitude += term.abs();
    }
    sum
}

fn direct_series(a: f64, b: f64, c: f64, z: f64) -> Option<SeriesSum> {
    let mut term = 1.0;
    let mut sum = SeriesSum {
        value: 1.0,
        magnitude: 1.0,
    };
    let mut small = 0;
    for k in 0..MAX_SERIES_TERMS {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum.value += term;
        sum.magnitude += term.abs();
        if !sum.value.is_finite() {
            return None;
        }
        if term.abs() <= SERIES_REL_TOL * sum.value.abs() {
            small += 1;
            if small == 2 {
                return Some(sum);
            }
        } else {
            small = 0;
        }
    }
    None
}

/// Series-only evaluation (terminating or `|z| < 1`) of canonical arguments.
fn series(args: Hyp2F1Args) -> Option<SeriesSum> {
    let args = args.canonical();
    if let Some(m) = nonpositive_integer(args.a) {
        return Some(terminating_series(m, args.b, args.c, args.z));
    }
    if args.z.abs() < 1.0 {
        return direct_series(args.a, args.b, args.c, args.z);
    }
    None
}

/// `2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))`, for `z < 0`.
fn pfaff(args: Hyp2F1Args) -> Option<f64> {
    let Hyp2F1Args { a, b, c, z } = args;
    let w = z / (z - 1.0);
    let inner = series(Hyp2F1Args {
        a,
        b: c - b,
        c,
        z: w,
    })?;
    Some((1.0 - z).powf(-a) * inner.value)
}

/// Standard `1/z` connection formula for `z < -1` and `a - b` not an integer.
fn connection(args: Hyp2F1Args) -> Option<f64> {
    connection_parts(args).map(|t| t.first + t.second)
}

/// The two terms of the `1/z` connection formula,
///
/// ```text
/// Γ(c)Γ(b-a)/(Γ(b)Γ(c-a)) (-z)^{-a} 2F1(a, a-c+1; a-b+1; 1/z)
///   + Γ(c)Γ(a-b)/(Γ(a)Γ(c-b)) (-z)^{-b} 2F1(b, b-c+1; b-a+1; 1/z)
/// ```
///
/// with `magnitude` the same sum taken over absolute series terms. The
/// magnitude is the scale of rounding error in `first + second`, which
/// matters where `2F1` passes through zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionTerms {
    pub first: f64,
    pub second: f64,
    pub magnitude: f64,
}

fn connection_parts(args: Hyp2F1Args) -> Option<ConnectionTerms> {
    let Hyp2F1Args { a, b, c, z } = args;
    if (a - b).fract() == 0.0 || z >= -1.0 {
        return None;
    }
    let inv = 1.0 / z;
    let term = |coef: f64, power: f64, inner: Hyp2F1Args| -> Option<(f64, f64)> {
        if coef == 0.0 {
            return Some((0.0, 0.0));
        }
        let scale = coef * (-z).powf(-power);
        let sum = series(inner)?;
        Some((scale * sum.value, scale.abs() * sum.magnitude))
    };
    let (first, mag_a) = term(
        gamma_ratio(&[c, b - a], &[b, c - a]).ok()?,
        a,
        Hyp2F1Args {
            a,
            b: a - c + 1.0,
            c: a - b + 1.0,
            z: inv,
        },
    )?;
    let (second, mag_b) = term(
        gamma_ratio(&[c, a - b], &[a, c - b]).ok()?,
        b,
        Hyp2F1Args {
            a: b,
            b: b - c + 1.0,
            c: b - a + 1.0,
            z: inv,
        },
    )?;
    Some(ConnectionTerms {
        first,
        second,
        magnitude: mag_a + mag_b,
    })
}

/// Gauss hypergeometric function `2F1(a, b; c; z)` for real arguments.
pub fn hyp2f1(args: Hyp2F1Args) -> Result<f64> {
    args.validate()?;
    let args = args.canonical();
    let mut attempted = Vec::new();

    if let Some(m) = nonpositive_integer(args.a) {
        return Ok(terminating_series(m, args.b, args.c, args.z).value);
    }
    // For z < 0 the Pfaff image w = z/(z-1) lies in (0, 1) and is smaller than
    // |z|, so its series neither alternates nor converges more slowly than the
    // direct one, which cancels badly as z approaches -1.
    if args.z < 0.0 {
        attempted.push(HypPath::Pfaff);
        if let Some(v) = pfaff(args) {
            return Ok(v);
        }
    }
    if args.z.abs() < 1.0 {
        attempted.push(HypPath::Direct);
        if let Some(v) = direct_series(args.a, args.b, args.c, args.z) {
            return Ok(v.value);
        }
    }
    if args.z < -1.0 {
        attempted.push(HypPath::Connection);
        if let Some(v) = connection(args) {
            return Ok(v);
        }
    }
    Err(Error::Evaluation {
        a: args.a,
        b: args.b,
        c: args.c,
        z: args.z,
        attempted,
    })
}

/// Both sides of Euler's transformation,
/// `2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a, c-b; c; z)`, each evaluated by `hyp2f1`.
pub fn euler_transform_check(args: Hyp2F1Args) -> Result<(f64, f64)> {
    args.validate()?;
    let Hyp2F1Args { a, b, c, z } = args;
    if !((c > a && a > 0.0) || (c > b && b > 0.0)) || !(z < 1.0) {
        return Err(Error::Domain(format!(
            "Euler transformation needs c > a > 0 (or c > b > 0) and z < 1, got {args:?}"
        )));
    }
    let lhs = hyp2f1(args)?;
    let rhs = (1.0 - z).powf(c - a - b)
        * hyp2f1(Hyp2F1Args {
            a: c - a,
            b: c - b,
            c,
            z,
        })?;
    Ok((lhs, rhs))
}

/// Direct series against the Pfaff-transformed series, for `-1 < z < 0`.
pub fn pfaff_check(args: Hyp2F1Args) -> Result<(f64, f64)> {
    args.validate()?;
    if !(args.z < 0.0 && args.z > -1.0) {
        return Err(Error::Domain(format!(
            "Pfaff consistency check needs -1 < z < 0, got z = {}",
            args.z
        )));
    }
    let fail = || Error::Evaluation {
        a: args.a,
        b: args.b,
        c: args.c,
        z: args.z,
        attempted: vec![HypPath::Direct, HypPath::Pfaff],
    };
    let direct = series(args).ok_or_else(fail)?.value;
    let mapped = pfaff(args.canonical()).ok_or_else(fail)?;
    Ok((direct, mapped))
}

/// `hyp2f1` against the explicit `1/z` connection formula, for `z < -1`
/// and `a - b` not an integer.
pub fn connection_check(args: Hyp2F1Args) -> Result<(f64, f64)> {
    let terms = connection_terms(args)?;
    Ok((hyp2f1(args)?, terms.first + terms.second))
}

/// The two terms of the connection formula and their rounding scale.
pub fn connection_terms(args: Hyp2F1Args) -> Result<ConnectionTerms> {
    args.validate()?;
    if !(args.z < -1.0) || (args.a - args.b).fract() == 0.0 {
        return Err(Error::Domain(format!(
            "connection formula needs z < -1 and a - b not an integer, got {args:?}"
        )));
    }
    connection_parts(args).ok_or(Error::Evaluation {
        a: args.a,
        b: args.b,
        c: args.c,
        z: args.z,
        attempted: vec![HypPath::Connection],
    })
}

/// Log-space sides of `Γ(z)Γ(z+1/2) = 2^{1-2z} √π Γ(2z)`.
pub fn legendre_duplication_check(z: f64) -> Result<(f64, f64)> {
    let lhs = log_gamma(z)? + log_gamma(z + 0.5)?;
    let rhs = (1.0 - 2.0 * z) * std::f64::consts::LN_2 + 0.5 * PI.ln() + log_gamma(2.0 * z)?;
    Ok((lhs, rhs))
}
