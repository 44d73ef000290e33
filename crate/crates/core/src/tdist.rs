//! Student t distribution with integer degrees of freedom: density, CDF,
//! raw, central and partial moments, and the inter-order relations linking
//! moments of order `n - j` to moments of order `j - 1`.
//!
//! Upper partial moments `E[((Y-m)_+)^j]` are evaluated by one of three routes:
//!
//! * `m >= 0.5`: closed form `C_n m^{j-n} B(n-j, j+1) 2F1((n-j)/2, (n-j+1)/2; (n+2)/2; -n/m^2)`;
//! * `m <= -0.5`: `E[(Y-m)^j] - (-1)^j E[((Y+m)_+)^j]`, reusing the closed form at `-m`;
//! * `|m| < 0.5`: binomial expansion around the half absolute moments `E|Y|^i / 2`,
//!   corrected by the finite integral `∫_0^m y^i f(y) dy` (a short `2F1` series).
//!
//! The middle band avoids the `m^{j-n}` prefactor blowing up as `m -> 0`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{self, Hyp2F1Args};

/// Below this `|m|` the closed form is replaced by the expansion around `m = 0`.
pub const NEAR_ZERO_BAND: f64 = 0.5;

/// Which moment about `m` is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentKind {
    Complete,
    UpperPartial,
    LowerPartial,
}

/// A moment request: order `j` about center `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuery {
    pub order: u32,
    pub center: f64,
    pub kind: MomentKind,
}

/// Student t distribution with `n >= 1` degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StudentT {
    dof: u32,
}

impl StudentT {
    pub fn new(dof: u32) -> Result<Self> {
        if dof == 0 {
            return Err(Error::Domain("degrees of freedom must be >= 1".into()));
        }
        Ok(Self { dof })
    }

    pub fn dof(&self) -> u32 {
        self.dof
    }

    /// Highest order with a finite moment, `n - 1`.
    pub fn max_moment_order(&self) -> u32 {
        self.dof - 1
    }

    fn n(&self) -> f64 {
        f64::from(self.dof)
    }

    fn check_order(&self, j: u32) -> Result<()> {
        if j >= self.dof {
            Err(Error::MomentNonexistent {
                order: j,
                dof: self.dof,
            })
        } else {
            Ok(())
        }
    }

    fn check_finite(m: f64) -> Result<()> {
        if m.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!("center must be finite, got {m}")))
        }
    }

    /// `ln[Γ((n+1)/2) / (√(nπ) Γ(n/2))]`.
    fn log_density_norm(&self) -> f64 {
        let n = self.n();
        libm::lgamma((n + 1.0) / 2.0) - libm::lgamma(n / 2.0) - 0.5 * (n * PI).ln()
    }

    pub fn pdf(&self, y: f64) -> f64 {
        let n = self.n();
        (self.log_density_norm() - (n + 1.0) / 2.0 * (y * y / n).ln_1p()).exp()
    }

    /// `P(Y > t)`, accurate in both tails.
    pub fn sf(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 1.0 - self.upper_tail(-t);
        }
        self.upper_tail(t)
    }

    pub fn cdf(&self, y: f64) -> f64 {
        if y < 0.0 {
            self.upper_tail(-y)
        } else {
            1.0 - self.upper_tail(y)
        }
    }

    /// `P(Y > t)` for `t >= 0`.
    ///
    /// For `t^2 <= n` the finite trigonometric sums in `θ = atan(t/√n)`
    /// give `P(|Y| < t)`, and the tail is its complement. Beyond that the
    /// complement cancels, so the tail comes from
    /// `½ I_x(n/2, 1/2)` with `x = n/(n+t^2) < 1/2` via its `2F1` series.
    fn upper_tail(&self, t: f64) -> f64 {
        let n = self.n();
        if t.is_nan() {
            return f64::NAN;
        }
        if t == f64::INFINITY {
            return 0.0;
        }
        if t * t <= n {
            return 0.5 - 0.5 * self.central_mass(t);
        }
        let denom = n + t * t;
        let x = n / denom;
        let half_n = n / 2.0;
        // I_x(a, b) = x^a (1-x)^b / (a B(a,b)) 2F1(a+b, 1; a+1; x)
        let log_pref = half_n * x.ln() + 0.5 * (t * t / denom).ln()
            - half_n.ln()
            - (libm::lgamma(half_n) + libm::lgamma(0.5) - libm::lgamma(half_n + 0.5));
        let series = specfun::hyp2f1(Hyp2F1Args {
            a: half_n + 0.5,
            b: 1.0,
            c: half_n + 1.0,
            z: x,
        })
        .expect("2F1 series converges for x < 1/2");
        0.5 * log_pref.exp() * series
    }

    /// `P(|Y| < t)` for `t >= 0` from the closed integer-dof sums.
    fn central_mass(&self, t: f64) -> f64 {
        let n = self.n();
        let denom = n + t * t;
        let sin = t / denom.sqrt();
        let cos2 = n / denom;
        if self.dof % 2 == 1 {
            let theta = (t / n.sqrt()).atan();
            if self.dof == 1 {
                return 2.0 * theta / PI;
            }
            // sinθ cosθ Σ_{k=0}^{(n-3)/2} [(2k)!!/(2k+1)!!] cos^{2k}θ
            let terms = (self.dof - 1) / 2;
            let mut coef = 1.0;
            let mut pow = 1.0;
            let mut sum = 1.0;
            for k in 1..terms {
                let k = f64::from(k);
                coef *= 2.0 * k / (2.0 * k + 1.0);
                pow *= cos2;
                sum += coef * pow;
            }
            2.0 / PI * (theta + sin * cos2.sqrt() * sum)
        } else {
            // sinθ Σ_{k=0}^{(n-2)/2} [(2k-1)!!/(2k)!!] cos^{2k}θ
            let terms = self.dof / 2;
            let mut coef = 1.0;
            let mut pow = 1.0;
            let mut sum = 1.0;
            for k in 1..terms {
                let k = f64::from(k);
                coef *= (2.0 * k - 1.0) / (2.0 * k);
                pow *= cos2;
                sum += coef * pow;
            }
            sin * sum
        }
    }

    /// `E|Y|^j` for `j <= n-1`; equals the raw moment for even `j`.
    fn abs_moment(&self, j: u32) -> f64 {
        let n = self.n();
        let j = f64::from(j);
        let log = j / 2.0 * n.ln() + libm::lgamma((j + 1.0) / 2.0) + libm::lgamma((n - j) / 2.0)
            - 0.5 * PI.ln()
            - libm::lgamma(n / 2.0);
        log.exp()
    }

    /// `E[Y^j]`: zero for odd `j`.
    pub fn raw_moment(&self, j: u32) -> Result<f64> {
        self.check_order(j)?;
        if j % 2 == 1 {
            return Ok(0.0);
        }
        Ok(self.abs_moment(j))
    }

    /// `E[(Y-m)^j]` through the terminating hypergeometric closed form.
    pub fn central_moment(&self, j: u32, m: f64) -> Result<f64> {
        self.check_order(j)?;
        Self::check_finite(m)?;
        let n = self.n();
        let jf = f64::from(j);
        let z = -m * m / n;
        if j.is_multiple_of(2) {
            let poly = specfun::hyp2f1(Hyp2F1Args {
                a: -jf / 2.0,
                b: (n - jf) / 2.0,
                c: 0.5,
                z,
            })?;
            Ok(self.abs_moment(j) * poly)
        } else {
            let log_pref = (jf - 1.0) / 2.0 * n.ln()
                + libm::lgamma(jf / 2.0 + 1.0)
                + libm::lgamma((n - jf + 1.0) / 2.0)
                - 0.5 * PI.ln()
                - libm::lgamma(n / 2.0);
            let poly = specfun::hyp2f1(Hyp2F1Args {
                a: (1.0 - jf) / 2.0,
                b: (n - jf + 1.0) / 2.0,
                c: 1.5,
                z,
            })?;
            // `+ 0.0` turns the -0.0 produced at m = 0 into an exact +0.0.
            Ok(-2.0 * m * log_pref.exp() * poly + 0.0)
        }
    }

    /// `E[((Y-m)_+)^j]`.
    pub fn upper_partial_moment(&self, j: u32, m: f64) -> Result<f64> {
        self.check_order(j)?;
        Self::check_finite(m)?;
        if j == 0 {
            return Ok(self.sf(m));
        }
        if m >= NEAR_ZERO_BAND {
            self.upper_closed_form(j, m)
        } else if m <= -NEAR_ZERO_BAND {
            let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
            Ok(self.central_moment(j, m)? - sign * self.upper_closed_form(j, -m)?)
        } else {
            self.upper_near_zero(j, m)
        }
    }

    /// `E[((Y-m)_-)^j] = E[((Y+m)_+)^j]` by symmetry of the density.
    pub fn lower_partial_moment(&self, j: u32, m: f64) -> Result<f64> {
        self.upper_partial_moment(j, -m)
    }

    pub fn moment(&self, query: MomentQuery) -> Result<f64> {
        match query.kind {
            MomentKind::Complete => self.central_moment(query.order, query.center),
            MomentKind::UpperPartial => self.upper_partial_moment(query.order, query.center),
            MomentKind::LowerPartial => self.lower_partial_moment(query.order, query.center),
        }
    }

    /// Closed form for `m > 0`, with the `2F1` at `-n/m^2` routed through Pfaff.
    fn upper_closed_form(&self, j: u32, m: f64) -> Result<f64> {
        let n = self.n();
        let jf = f64::from(j);
        let log_cn = n / 2.0 * n.ln() + libm::lgamma((n + 1.0) / 2.0)
            - 0.5 * PI.ln()
            - libm::lgamma(n / 2.0);
        let log_pref = log_cn + (jf - n) * m.ln() + specfun::log_beta(n - jf, jf + 1.0)?;
        let hyp = specfun::hyp2f1(Hyp2F1Args {
            a: (n - jf) / 2.0,
            b: (n - jf + 1.0) / 2.0,
            c: (n + 2.0) / 2.0,
            z: -n / (m * m),
        })?;
        Ok(log_pref.exp() * hyp)
    }

    /// `Σ_i C(j,i) (-m)^{j-i} (E|Y|^i / 2 - ∫_0^m y^i f(y) dy)` for small `|m|`.
    fn upper_near_zero(&self, j: u32, m: f64) -> Result<f64> {
        let n = self.n();
        let norm = self.log_density_norm().exp();
        let mut total = 0.0;
        for i in 0..=j {
            let weight = specfun::binomial(j, i) * (-m).powi((j - i) as i32);
            if weight == 0.0 {
                continue;
            }
            let fi = f64::from(i);
            // ∫_0^m y^i (1 + y²/n)^{-(n+1)/2} dy = m^{i+1}/(i+1) 2F1((n+1)/2, (i+1)/2; (i+3)/2; -m²/n)
            let partial = if m == 0.0 {
                0.0
            } else {
                let hyp = specfun::hyp2f1(Hyp2F1Args {
                    a: (n + 1.0) / 2.0,
                    b: (fi + 1.0) / 2.0,
                    c: (fi + 3.0) / 2.0,
                    z: -m * m / n,
                })?;
                norm * m.powi(i as i32 + 1) / (fi + 1.0) * hyp
            };
            total += weight * (0.5 * self.abs_moment(i) - partial);
        }
        Ok(total)
    }

    /// `E[(Y-m)^{n-j}]` computed from order `j-1`.
    ///
    /// Odd `n`: `factor * E[(Y-m)^{j-1}]`. Even `n`:
    /// `factor * (2 E[((Y-m)_+)^{j-1}] - E[(Y-m)^{j-1}])`.
    pub fn central_moment_via_relation(&self, j: u32, m: f64) -> Result<f64> {
        let factor = interorder_factor(self.dof, j, m)?.value;
        let lower_order = j - 1;
        let central = self.central_moment(lower_order, m)?;
        if self.dof % 2 == 1 {
            Ok(factor * central)
        } else {
            Ok(factor * (2.0 * self.upper_partial_moment(lower_order, m)? - central))
        }
    }
}

/// The factor `(m^2 + n)^{(n-2j+1)/2}` linking orders `n-j` and `j-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterOrderFactor {
    pub dof: u32,
    pub j: u32,
    pub center: f64,
    pub value: f64,
}

impl InterOrderFactor {
    /// `(n - 2j + 1) / 2`.
    pub fn exponent(&self) -> f64 {
        (f64::from(self.dof) - 2.0 * f64::from(self.j) + 1.0) / 2.0
    }
}

pub fn interorder_factor(dof: u32, j: u32, m: f64) -> Result<InterOrderFactor> {
    if dof == 0 || j == 0 || j > dof {
        return Err(Error::Domain(format!(
            "inter-order index j={j} must lie in 1..={dof}"
        )));
    }
    StudentT::check_finite(m)?;
    let exponent = (f64::from(dof) - 2.0 * f64::from(j) + 1.0) / 2.0;
    Ok(InterOrderFactor {
        dof,
        j,
        center: m,
        value: (m * m + f64::from(dof)).powf(exponent),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32) -> StudentT {
        StudentT::new(n).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            0.0
        } else {
            (a - b).abs() / scale
        }
    }

    #[test]
    fn rejects_zero_dof() {
        assert!(StudentT::new(0).is_err());
    }

    #[test]
    fn pdf_examples() {
        assert!(rel(t(1).pdf(0.0), 1.0 / PI) < 1e-15);
        assert!(rel(t(2).pdf(0.0), 1.0 / (2.0 * 2f64.sqrt())) < 1e-15);
        for &y in &[0.1, 1.0, 3.7, 40.0] {
            assert_eq!(t(3).pdf(y), t(3).pdf(-y));
        }
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(t(5).cdf(0.0), 0.5);
        assert!(rel(t(1).cdf(1.0), 0.75) < 1e-15);
        // mpmath: 0.8535533905932737622004221810524245196424
        assert!(rel(t(2).cdf(2f64.sqrt()), 0.853_553_390_593_273_8) < 1e-15);
        for n in 1..=12 {
            for &y in &[0.3, 1.0, 2.5, 3.5, 10.0, 250.0] {
                let d = t(n);
                assert!((d.cdf(y) + d.cdf(-y) - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn tail_is_accurate_far_out() {
        // mpmath: 1.790661843836187320395536068611614265212e-7
        assert!(rel(t(12).sf(10.0), 1.790_661_843_836_187_3e-7) < 1e-13);
        // Cauchy: P(Y > t) = atan(1/t)/π
        for &y in &[2.0, 50.0, 1e6] {
            assert!(rel(t(1).sf(y), (1.0 / y).atan() / PI) < 1e-14, "y={y}");
        }
        // t2: P(Y > t) = (1 - t/√(2+t²))/2 = 1/(√(2+t²)(√(2+t²)+t))
        for &y in &[2.0f64, 30.0, 1e5] {
            let s = (2.0 + y * y).sqrt();
            assert!(rel(t(2).sf(y), 1.0 / (s * (s + y))) < 1e-14, "y={y}");
        }
    }

    #[test]
    fn tail_branches_meet_continuously() {
        for n in 1..=12 {
            let d = t(n);
            let edge = f64::from(n).sqrt();
            // one ulp either side of t = √n, where the two routes hand over
            let below = d.sf(f64::from_bits(edge.to_bits() - 1));
            let above = d.sf(f64::from_bits(edge.to_bits() + 1));
            assert!(rel(below, above) < 1e-13, "n={n}: {below} vs {above}");
        }
    }

    #[test]
    fn raw_moment_examples() {
        assert_eq!(t(3).raw_moment(1).unwrap(), 0.0);
        assert!(rel(t(3).raw_moment(2).unwrap(), 3.0) < 1e-14);
        assert!(rel(t(5).raw_moment(2).unwrap(), 5.0 / 3.0) < 1e-14);
        assert!(rel(t(5).raw_moment(4).unwrap(), 25.0) < 1e-14);
        assert!(matches!(
            t(3).raw_moment(3),
            Err(Error::MomentNonexistent { order: 3, dof: 3 })
        ));
    }

    #[test]
    fn central_moment_examples() {
        for n in 1..=9 {
            for j in 0..n {
                assert_eq!(
                    t(n).central_moment(j, 0.0).unwrap(),
                    t(n).raw_moment(j).unwrap(),
                    "n={n} j={j}"
                );
            }
        }
        assert!(rel(t(3).central_moment(1, 1.0).unwrap(), -1.0) < 1e-15);
        // E[(Y-2)^3] = -3·2·E[Y²] - 8 = -18 for n = 5
        assert!(rel(t(5).central_moment(3, 2.0).unwrap(), -18.0) < 1e-14);
        // E[(Y-m)^2] = n/(n-2) + m²
        assert!(rel(t(3).central_moment(2, -1.5).unwrap(), 3.0 + 2.25) < 1e-14);
        assert!(t(4).central_moment(4, 0.0).is_err());
        assert!(t(4).central_moment(1, f64::NAN).is_err());
    }

    #[test]
    fn upper_partial_examples() {
        let d = t(4);
        assert_eq!(d.upper_partial_moment(0, 1.3).unwrap(), 1.0 - d.cdf(1.3));
        // mpmath: 0.131725798235612075592230850464054742035
        assert!(
            rel(
                d.upper_partial_moment(0, 1.3).unwrap(),
                0.131_725_798_235_612_1
            ) < 1e-14
        );
        assert!(
            rel(
                t(2).upper_partial_moment(1, 0.0).unwrap(),
                2f64.sqrt() / 2.0
            ) < 1e-15
        );
        // mpmath: 0.1255022100194814540935025662425812876787
        assert!(
            rel(
                t(5).upper_partial_moment(2, 1.7).unwrap(),
                0.125_502_210_019_481_45
            ) < 1e-13
        );
        // near-zero band; mpmath: 345474.7445885834176568356801111987983143
        assert!(
            rel(
                t(12).upper_partial_moment(11, 0.3).unwrap(),
                345_474.744_588_583_4
            ) < 1e-13
        );
        // mpmath: 11.0004661106017560924019270851352229669
        assert!(
            rel(
                t(12).upper_partial_moment(5, -0.2).unwrap(),
                11.000_466_110_601_756
            ) < 1e-13
        );
        // mpmath: 0.01698052491684230526337073942265319099658
        assert!(
            rel(
                t(7).upper_partial_moment(3, 4.0).unwrap(),
                0.016_980_524_916_842_305
            ) < 1e-13
        );
    }

    #[test]
    fn lower_partial_examples() {
        assert_eq!(t(3).lower_partial_moment(0, 0.0).unwrap(), 0.5);
        assert_eq!(
            t(4).lower_partial_moment(1, 0.0).unwrap(),
            t(4).upper_partial_moment(1, 0.0).unwrap()
        );
        // mpmath: 0.3738422235431656626711027073618305451063
        assert!(
            rel(
                t(5).lower_partial_moment(3, -2.1).unwrap(),
                0.373_842_223_543_165_66
            ) < 1e-13
        );
        // mpmath: 101.040016115175960118393573649990592778
        assert!(
            rel(
                t(7).lower_partial_moment(4, 2.5).unwrap(),
                101.040_016_115_175_96
            ) < 1e-13
        );
    }

    #[test]
    fn routes_agree_at_band_edges() {
        for n in 2..=12 {
            let d = t(n);
            for j in 1..n {
                for &edge in &[NEAR_ZERO_BAND, -NEAR_ZERO_BAND] {
                    let inside = d.upper_partial_moment(j, edge * (1.0 - 1e-13)).unwrap();
                    let outside = d.upper_partial_moment(j, edge).unwrap();
                    assert!(rel(inside, outside) < 1e-11, "n={n} j={j} edge={edge}");
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        for &m in &[-7.0, 0.0, 0.3, 12.5] {
            assert_eq!(interorder_factor(3, 2, m).unwrap().value, 1.0);
        }
        assert!(rel(interorder_factor(2, 1, 0.0).unwrap().value, 2f64.sqrt()) < 1e-15);
        assert!(rel(interorder_factor(5, 1, 2.0).unwrap().value, 81.0) < 1e-15);
        assert_eq!(interorder_factor(5, 4, 0.0).unwrap().exponent(), -1.0);
        assert!(interorder_factor(4, 0, 0.0).is_err());
        assert!(interorder_factor(4, 5, 0.0).is_err());
    }

    #[test]
    fn relation_examples() {
        // raw-moment remark: E[Y²] = 3 E[Y⁰] for n = 3
        assert!(rel(t(3).central_moment_via_relation(1, 0.0).unwrap(), 3.0) < 1e-15);
        // E[Y²] = √4 E|Y| for n = 4
        let d = t(4);
        let via = d.central_moment_via_relation(2, 0.0).unwrap();
        let abs_first = 2.0 * d.upper_partial_moment(1, 0.0).unwrap();
        assert!(rel(via, 2.0 * abs_first) < 1e-15);
        assert!(rel(via, d.raw_moment(2).unwrap()) < 1e-14);
        let direct = t(5).central_moment(3, 1.1).unwrap();
        assert!(rel(t(5).central_moment_via_relation(2, 1.1).unwrap(), direct) < 1e-11);
        assert!(t(5).central_moment_via_relation(6, 0.0).is_err());
    }
}
