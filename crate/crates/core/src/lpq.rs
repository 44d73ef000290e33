//! L_p-quantiles of the Student t distribution.
//!
//! `ρ_{p,τ}(Y)` minimises `E[ℓ_{p,τ}(Y - m)]` with the asymmetric power loss
//! `ℓ_{p,τ}(x) = τ (x_+)^p + (1-τ) (x_-)^p`. For `p = 1` this is the ordinary
//! quantile, found by inverting the CDF. For `p >= 2` it is the unique root of
//! the first-order condition
//!
//! ```text
//! τ E[((Y-m)_+)^{p-1}] = (1-τ) E[((Y-m)_-)^{p-1}]
//! ```
//!
//! which only needs moments up to order `p - 1 <= n - 1`.

use crate::error::{Error, Result};
use crate::roots;
use crate::tdist::StudentT;
use crate::verify::{Identity, ReportBuilder, VerificationReport};

/// Relative bracket width at which the quantile solvers stop.
pub const SOLVE_TOL: f64 = 1e-12;
/// Maximum relative deviation accepted by [`verify_theorem4`].
pub const SYMMETRY_TOL: f64 = 1e-9;
const MAX_DOUBLINGS: usize = 60;

/// Request for `a + b ρ_{p,τ}(Y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpQuantileQuery {
    pub power: u32,
    pub tau: f64,
    pub affine_a: f64,
    pub affine_b: f64,
}

impl LpQuantileQuery {
    pub fn new(power: u32, tau: f64) -> Self {
        Self {
            power,
            tau,
            affine_a: 0.0,
            affine_b: 1.0,
        }
    }

    /// Targets `X = a + b Y` instead of `Y`.
    pub fn affine(self, a: f64, b: f64) -> Self {
        Self {
            affine_a: a,
            affine_b: b,
            ..self
        }
    }
}

/// Value of the first-order condition at `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocResidual {
    pub center: f64,
    pub value: f64,
}

/// `τ (x_+)^p + (1-τ) (x_-)^p`.
pub fn loss(p: u32, tau: f64, x: f64) -> f64 {
    let p = p as i32;
    if x > 0.0 {
        tau * x.powi(p)
    } else if x < 0.0 {
        (1.0 - tau) * (-x).powi(p)
    } else {
        0.0
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("tau must lie in (0, 1), got {tau}")))
    }
}

fn check_power(dist: &StudentT, p: u32, min: u32) -> Result<()> {
    if p < min || p > dist.dof() {
        Err(Error::UnsupportedPower {
            p,
            dof: dist.dof(),
            min,
        })
    } else {
        Ok(())
    }
}

/// `τ E[((Y-m)_+)^{p-1}] - (1-τ) E[((Y-m)_-)^{p-1}]`, strictly decreasing in `m`.
pub fn foc_residual(dist: &StudentT, p: u32, tau: f64, m: f64) -> Result<FocResidual> {
    check_power(dist, p, 2)?;
    check_tau(tau)?;
    let (upper, lower) = foc_parts(dist, p, tau, m)?;
    Ok(FocResidual {
        center: m,
        value: upper - lower,
    })
}

fn foc_parts(dist: &StudentT, p: u32, tau: f64, m: f64) -> Result<(f64, f64)> {
    let upper = tau * dist.upper_partial_moment(p - 1, m)?;
    let lower = (1.0 - tau) * dist.lower_partial_moment(p - 1, m)?;
    Ok((upper, lower))
}

/// The τ-quantile, by bisection on the CDF.
pub fn quantile(dist: &StudentT, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    // F(m) - τ, written so that neither tail loses precision.
    let excess = |m: f64| -> Result<f64> {
        Ok(if m <= 0.0 {
            dist.sf(-m) - tau
        } else {
            (1.0 - tau) - dist.sf(m)
        })
    };
    let (lo, hi) = roots::expand_bracket(excess, 0.0, 1.0, MAX_DOUBLINGS)?;
    roots::bisect(excess, lo, hi, SOLVE_TOL)
}

/// `ρ_{p,τ}` of the standard t, before any affine map.
fn standard_lp_quantile(dist: &StudentT, p: u32, tau: f64) -> Result<f64> {
    let start = quantile(dist, tau)?;
    if p == 1 {
        return Ok(start);
    }
    // The FOC normalised by its total mass keeps the same root and sign while
    // staying O(1) for high-order moments.
    let normalised = |m: f64| -> Result<f64> {
        let (upper, lower) = foc_parts(dist, p, tau, m)?;
        Ok((upper - lower) / (upper + lower))
    };
    let (lo, hi) = roots::expand_bracket(normalised, start, 1.0, MAX_DOUBLINGS)?;
    roots::secant_bisect(normalised, lo, hi, SOLVE_TOL)
}

/// `a + b ρ_{p,τ}(Y)` for `1 <= p <= n`, `τ ∈ (0,1)`, `b > 0`.
pub fn lp_quantile(dist: &StudentT, query: &LpQuantileQuery) -> Result<f64> {
    check_power(dist, query.power, 1)?;
    check_tau(query.tau)?;
    if !(query.affine_b > 0.0 && query.affine_b.is_finite()) || !query.affine_a.is_finite() {
        return Err(Error::Domain(format!(
            "affine map needs finite a and b > 0, got a={} b={}",
            query.affine_a, query.affine_b
        )));
    }
    let rho = standard_lp_quantile(dist, query.power, query.tau)?;
    Ok(query.affine_a + query.affine_b * rho)
}

/// Power pairs `(j, n-j+1)` for `j = 1..=ceil(n/2)` whose L_p-quantiles coincide.
pub fn symmetry_pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n.div_ceil(2)).map(|j| (j, n - j + 1)).collect()
}

/// Solves `ρ_{j,τ}` and `ρ_{n-j+1,τ}` separately for every symmetry pair and
/// every `τ`, and reports the largest `|Δ| / (1 + |ρ_{j,τ}|)`.
pub fn verify_theorem4(dist: &StudentT, taus: &[f64]) -> VerificationReport {
    let n = dist.dof();
    let mut report = ReportBuilder::new(
        Identity::Thm4,
        format!("n={n}, {} tau values", taus.len()),
        SYMMETRY_TOL,
    );
    if taus.is_empty() {
        report.fail("empty tau grid".into());
    }
    for (j, k) in symmetry_pairs(n) {
        for &tau in taus {
            let err = (|| {
                let low = lp_quantile(dist, &LpQuantileQuery::new(j, tau))?;
                let high = lp_quantile(dist, &LpQuantileQuery::new(k, tau))?;
                Ok((high - low).abs() / (1.0 + low.abs()))
            })();
            report.record_result(err, || format!("n={n} pair=({j},{k}) tau={tau}"));
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn t(n: u32) -> StudentT {
        StudentT::new(n).unwrap()
    }

    #[test]
    fn loss_examples() {
        assert_eq!(loss(2, 0.5, 3.0), 4.5);
        assert_eq!(loss(3, 0.2, 0.0), 0.0);
        assert!((loss(1, 0.9, -2.0) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn foc_examples() {
        assert_eq!(foc_residual(&t(4), 2, 0.5, 0.0).unwrap().value, 0.0);
        let d = t(3);
        let r = foc_residual(&d, 2, 0.9, 0.0).unwrap().value;
        let expected = 0.8 * d.upper_partial_moment(1, 0.0).unwrap();
        assert!((r - expected).abs() < 1e-15 && r > 0.0);
        // mpmath root of the FOC: -0.3737786199876317468580746813097244844715
        let root = -0.373_778_619_987_631_75;
        assert!(foc_residual(&t(5), 3, 0.3, root).unwrap().value.abs() <= 1e-10);
        assert!(matches!(
            foc_residual(&t(5), 1, 0.3, 0.0),
            Err(Error::UnsupportedPower { .. })
        ));
        assert!(foc_residual(&t(5), 6, 0.3, 0.0).is_err());
    }

    #[test]
    fn median_is_zero() {
        for n in 1..=8 {
            for p in 1..=n {
                let q = lp_quantile(&t(n), &LpQuantileQuery::new(p, 0.5)).unwrap();
                assert!(q.abs() < 1e-12, "n={n} p={p}: {q}");
            }
        }
    }

    #[test]
    fn cauchy_quantile() {
        let q = lp_quantile(&t(1), &LpQuantileQuery::new(1, 0.75)).unwrap();
        assert!((q - 1.0).abs() < 1e-12);
        let q = quantile(&t(1), 0.9).unwrap();
        assert!((q - (0.4 * PI).tan()).abs() < 1e-11);
    }

    #[test]
    fn expectile_matches_quantile_for_two_dof() {
        let d = t(2);
        let e = lp_quantile(&d, &LpQuantileQuery::new(2, 0.9)).unwrap();
        let q = lp_quantile(&d, &LpQuantileQuery::new(1, 0.9)).unwrap();
        assert!((e - q).abs() <= 1e-9 * (1.0 + q.abs()));
        // mpmath: 1.885618083164126731735584965612930771426
        assert!((q - 1.885_618_083_164_126_7).abs() < 1e-11);
    }

    #[test]
    fn expectile_four_dof_frozen() {
        // mpmath FOC root: 1.154700538379251529018297561003914911295
        let e = lp_quantile(&t(4), &LpQuantileQuery::new(2, 0.9)).unwrap();
        assert!((e - 1.154_700_538_379_251_5).abs() < 1e-11);
    }

    #[test]
    fn rejects_bad_queries() {
        let d = t(2);
        assert!(lp_quantile(&d, &LpQuantileQuery::new(3, 0.5)).is_err());
        assert!(lp_quantile(&d, &LpQuantileQuery::new(0, 0.5)).is_err());
        assert!(lp_quantile(&d, &LpQuantileQuery::new(1, 0.0)).is_err());
        assert!(lp_quantile(&d, &LpQuantileQuery::new(1, 1.0)).is_err());
        assert!(lp_quantile(&d, &LpQuantileQuery::new(1, 0.3).affine(0.0, -1.0)).is_err());
    }

    #[test]
    fn affine_map_is_applied() {
        let d = t(5);
        let base = lp_quantile(&d, &LpQuantileQuery::new(3, 0.2)).unwrap();
        let mapped = lp_quantile(&d, &LpQuantileQuery::new(3, 0.2).affine(1.5, 2.0)).unwrap();
        assert_eq!(mapped, 1.5 + 2.0 * base);
    }

    #[test]
    fn pairs() {
        assert_eq!(symmetry_pairs(1), vec![(1, 1)]);
        assert_eq!(symmetry_pairs(3), vec![(1, 3), (2, 2)]);
        assert_eq!(symmetry_pairs(4), vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn theorem4_examples() {
        let taus: Vec<f64> = (1..=9).map(|i| f64::from(i) / 10.0).collect();
        let r = verify_theorem4(&t(3), &taus);
        assert!(r.passed, "{r:?}");
        let r = verify_theorem4(&t(4), &[0.5]);
        assert_eq!(r.max_rel_error, 0.0);
        assert!(r.passed);
        let r = verify_theorem4(&t(6), &[0.01, 0.99]);
        assert!(r.passed, "{r:?}");
        assert!(!verify_theorem4(&t(6), &[]).passed);
    }
}
