//! Brute-force references for the closed forms: adaptive quadrature of the
//! t density, Monte Carlo sampling, and an independent log-Gamma.
//!
//! Nothing here calls into `specfun` or `tdist`. The density normalisation
//! `Γ((n+1)/2)/Γ(n/2)` comes from its two-step recurrence in `n`, and
//! samples are built from normal variates only.

mod monte_carlo;
mod quadrature;

use std::f64::consts::PI;

pub use monte_carlo::{mc_partial_moment, McEstimate, McSpec, SEED_ENV};
pub use quadrature::{integrate, QuadEstimate, QuadratureSpec};

use crate::error::{Error, Result};
use crate::roots;

/// Which part of the line the moment integrates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
    Complete,
}

/// `Γ((n+1)/2) / Γ(n/2)` from `r(1) = 1/√π`, `r(2) = √π/2`, `r(n+2) = r(n) (n+1)/n`.
fn half_gamma_ratio(n: u32) -> f64 {
    let (mut r, start) = if n % 2 == 1 {
        (1.0 / PI.sqrt(), 1)
    } else {
        (PI.sqrt() / 2.0, 2)
    };
    let mut k = start;
    while k < n {
        r *= f64::from(k + 1) / f64::from(k);
        k += 2;
    }
    r
}

/// Density of `loc + scale * Y` with `Y` Student t on `dof` degrees of freedom.
#[derive(Debug, Clone, Copy)]
struct Density {
    dof: f64,
    loc: f64,
    scale: f64,
    norm: f64,
}

impl Density {
    fn new(dof: u32, loc: f64, scale: f64) -> Self {
        let n = f64::from(dof);
        Self {
            dof: n,
            loc,
            scale,
            norm: half_gamma_ratio(dof) / (n * PI).sqrt() / scale,
        }
    }

    fn eval(&self, x: f64) -> f64 {
        let y = (x - self.loc) / self.scale;
        self.norm * (1.0 + y * y / self.dof).powf(-(self.dof + 1.0) / 2.0)
    }

    /// `∫ ((x-m)_±)^j f(x) dx` through `x = m ± t/(1-t)`, `t ∈ (0, 1)`.
    fn one_sided(
        &self,
        j: u32,
        m: f64,
        upward: bool,
        spec: &QuadratureSpec,
    ) -> Result<QuadEstimate> {
        let power = j as i32;
        let integrand = |t: f64| {
            let s = 1.0 - t;
            let u = t / s;
            let x = if upward { m + u } else { m - u };
            u.powi(power) * self.eval(x) / (s * s)
        };
        integrate(integrand, 0.0, 1.0, spec)
    }

    fn moment(&self, j: u32, m: f64, side: Side, spec: &QuadratureSpec) -> Result<QuadEstimate> {
        match side {
            Side::Upper => self.one_sided(j, m, true, spec),
            Side::Lower => self.one_sided(j, m, false, spec),
            Side::Complete => {
                let up = self.one_sided(j, m, true, spec)?;
                let down = self.one_sided(j, m, false, spec)?;
                let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
                Ok(QuadEstimate {
                    value: up.value + sign * down.value,
                    error_bound: up.error_bound + down.error_bound,
                })
            }
        }
    }
}

fn check_order(n: u32, j: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("degrees of freedom must be >= 1".into()));
    }
    if j >= n {
        return Err(Error::MomentNonexistent { order: j, dof: n });
    }
    Ok(())
}

/// The t density evaluated without any Gamma-function code.
pub fn reference_pdf(n: u32, y: f64) -> f64 {
    Density::new(n, 0.0, 1.0).eval(y)
}

/// Quadrature value of the upper (`E[((Y-m)_+)^j]`), lower (`E[((Y-m)_-)^j]`)
/// or complete (`E[(Y-m)^j]`) moment, with the achieved error bound.
pub fn quad_partial_moment_with_error(
    n: u32,
    j: u32,
    m: f64,
    side: Side,
    spec: &QuadratureSpec,
) -> Result<QuadEstimate> {
    check_order(n, j)?;
    Density::new(n, 0.0, 1.0).moment(j, m, side, spec)
}

pub fn quad_partial_moment(
    n: u32,
    j: u32,
    m: f64,
    side: Side,
    spec: &QuadratureSpec,
) -> Result<f64> {
    quad_partial_moment_with_error(n, j, m, side, spec).map(|e| e.value)
}

/// L_p-quantile of `Y` by bisection on the quadrature first-order condition.
pub fn quad_lp_quantile(n: u32, p: u32, tau: f64, spec: &QuadratureSpec) -> Result<f64> {
    quad_lp_quantile_affine(n, p, tau, 0.0, 1.0, spec)
}

/// L_p-quantile of `loc + scale * Y`, integrating the transformed density
/// directly rather than mapping the standard solution.
pub fn quad_lp_quantile_affine(
    n: u32,
    p: u32,
    tau: f64,
    loc: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if p == 0 || p > n {
        return Err(Error::UnsupportedPower { p, dof: n, min: 1 });
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::Domain(format!("tau must lie in (0, 1), got {tau}")));
    }
    if !(scale > 0.0) {
        return Err(Error::Domain(format!(
            "scale must be positive, got {scale}"
        )));
    }
    let density = Density::new(n, loc, scale);
    // τ E[((X-m)_+)^{p-1}] - (1-τ) E[((X-m)_-)^{p-1}]; for p = 1 this is τ - F(m).
    let residual = |m: f64| -> Result<f64> {
        let up = density.moment(p - 1, m, Side::Upper, spec)?.value;
        let down = density.moment(p - 1, m, Side::Lower, spec)?.value;
        Ok(tau * up - (1.0 - tau) * down)
    };
    let (lo, hi) = roots::expand_bracket(residual, loc, scale, 60)?;
    roots::bisect(residual, lo, hi, 1e-12)
}

/// `ln Γ(x)` for `x > 0` by upward recurrence to `x >= 25` and the Stirling
/// series through `B_20`.
pub fn reference_log_gamma(x: f64) -> f64 {
    const SHIFT_TO: f64 = 25.0;
    // B_{2k} / (2k (2k-1)), k = 1..=10
    const COEFFS: [f64; 10] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
        43_867.0 / 244_188.0,
        -174_611.0 / 125_400.0,
    ];
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < SHIFT_TO {
        product *= shifted;
        shifted += 1.0;
    }
    let inv = 1.0 / shifted;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in COEFFS {
        series += c * pow;
        pow *= inv2;
    }
    (shifted - 0.5) * shifted.ln() - shifted + 0.5 * (2.0 * PI).ln() + series - product.ln()
}
