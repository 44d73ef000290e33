//! Identity checks over parameter grids, each summarised as a
//! [`VerificationReport`].
//!
//! Every moment identity is checked as a maximum relative error
//! `|lhs - rhs| / max(|lhs|, |rhs|)` (zero when both sides vanish).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lpq;
use crate::oracle::{self, QuadratureSpec, Side};
use crate::specfun::{self, Hyp2F1Args};
use crate::tdist::{interorder_factor, StudentT};

pub const PROP1_TOL: f64 = 1e-9;
pub const PARTIAL_RELATION_TOL: f64 = 1e-10;
pub const CENTRAL_RELATION_TOL: f64 = 1e-11;
pub const EULER_TOL: f64 = 1e-11;
pub const CONNECTION_TOL: f64 = 1e-10;
pub const LEGENDRE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Prop1VsQuadrature,
    Lemma1Pos,
    Lemma1Neg,
    Thm2,
    Thm3,
    Cor1,
    Thm4,
    EulerEq6,
    ConnectionEq7,
    LegendreDup,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::Prop1VsQuadrature,
        Identity::Lemma1Pos,
        Identity::Lemma1Neg,
        Identity::Thm2,
        Identity::Thm3,
        Identity::Cor1,
        Identity::Thm4,
        Identity::EulerEq6,
        Identity::ConnectionEq7,
        Identity::LegendreDup,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Identity::Prop1VsQuadrature => "prop1_vs_quadrature",
            Identity::Lemma1Pos => "lemma1_pos",
            Identity::Lemma1Neg => "lemma1_neg",
            Identity::Thm2 => "thm2",
            Identity::Thm3 => "thm3",
            Identity::Cor1 => "cor1",
            Identity::Thm4 => "thm4",
            Identity::EulerEq6 => "euler_eq6",
            Identity::ConnectionEq7 => "connection_eq7",
            Identity::LegendreDup => "legendre_dup",
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            Identity::Prop1VsQuadrature => PROP1_TOL,
            Identity::Lemma1Pos | Identity::Lemma1Neg | Identity::Thm3 | Identity::Cor1 => {
                PARTIAL_RELATION_TOL
            }
            Identity::Thm2 => CENTRAL_RELATION_TOL,
            Identity::Thm4 => lpq::SYMMETRY_TOL,
            Identity::EulerEq6 => EULER_TOL,
            Identity::ConnectionEq7 => CONNECTION_TOL,
            Identity::LegendreDup => LEGENDRE_TOL,
        }
    }

    /// Whether the check ranges over degrees of freedom.
    pub fn uses_dof(&self) -> bool {
        !matches!(
            self,
            Identity::EulerEq6 | Identity::ConnectionEq7 | Identity::LegendreDup
        )
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Identity::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Identity::ALL.iter().map(Identity::as_str).collect();
                format!(
                    "unknown identity '{s}' (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// Outcome of one identity over one grid. `passed` holds exactly when
/// `max_rel_error <= tolerance` and no evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub grid: String,
    pub evaluations: usize,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Grid point where `max_rel_error` was attained.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

pub(crate) struct ReportBuilder {
    identity: Identity,
    grid: String,
    tolerance: f64,
    evaluations: usize,
    max_rel_error: f64,
    worst_case: Option<String>,
    note: Option<String>,
    failures: Vec<String>,
}

impl ReportBuilder {
    pub(crate) fn new(identity: Identity, grid: String, tolerance: f64) -> Self {
        Self {
            identity,
            grid,
            tolerance,
            evaluations: 0,
            max_rel_error: 0.0,
            worst_case: None,
            note: None,
            failures: Vec::new(),
        }
    }

    pub(crate) fn record(&mut self, err: f64) {
        self.evaluations += 1;
        if err.is_nan() {
            self.failures.push("NaN error measure".into());
        } else if err > self.max_rel_error {
            self.max_rel_error = err;
        }
    }

    pub(crate) fn record_result(&mut self, err: Result<f64>, context: impl FnOnce() -> String) {
        match err {
            Ok(e) => {
                if e > self.max_rel_error {
                    self.worst_case = Some(context());
                }
                self.record(e)
            }
            Err(e) => self.fail(format!("{}: {e}", context())),
        }
    }

    pub(crate) fn fail(&mut self, msg: String) {
        self.evaluations += 1;
        self.failures.push(msg);
    }

    fn note(&mut self, note: String) {
        self.note = Some(note);
    }

    fn absorb(&mut self, other: VerificationReport) {
        self.evaluations += other.evaluations;
        if other.max_rel_error > self.max_rel_error {
            self.max_rel_error = other.max_rel_error;
            self.worst_case = other.worst_case;
        }
        self.failures.extend(other.failures);
    }

    pub(crate) fn finish(self) -> VerificationReport {
        VerificationReport {
            identity: self.identity,
            passed: self.failures.is_empty() && self.max_rel_error <= self.tolerance,
            grid: self.grid,
            evaluations: self.evaluations,
            max_rel_error: self.max_rel_error,
            worst_case: self.worst_case,
            tolerance: self.tolerance,
            note: self.note,
            failures: self.failures,
        }
    }
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_error(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// `m_min, m_min + step, ..., m_max` with the endpoint included.
pub fn center_grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    let count = ((max - min) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| min + i as f64 * step).collect()
}

/// `k` evenly spaced interior levels `i / (k + 1)`.
pub fn tau_grid(steps: usize) -> Vec<f64> {
    let denom = (steps + 1) as f64;
    (1..=steps).map(|i| i as f64 / denom).collect()
}

/// Parameter grid shared by the moment and quantile identities.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyGrid {
    pub dofs: Vec<u32>,
    pub centers: Vec<f64>,
    pub taus: Vec<f64>,
    pub quadrature: QuadratureSpec,
}

impl Default for VerifyGrid {
    /// `n = 1..=12`, `m ∈ {-10, -9.5, ..., 10}`, `τ ∈ {0.01, ..., 0.99}`.
    fn default() -> Self {
        Self {
            dofs: (1..=12).collect(),
            centers: center_grid(-10.0, 10.0, 0.5),
            taus: tau_grid(99),
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl VerifyGrid {
    fn describe(&self) -> String {
        let (lo, hi) = self
            .centers
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &m| {
                (lo.min(m), hi.max(m))
            });
        format!(
            "n in {:?}, {} centers in [{lo}, {hi}]",
            self.dofs,
            self.centers.len()
        )
    }
}

pub fn run(identity: Identity, grid: &VerifyGrid) -> VerificationReport {
    match identity {
        Identity::Prop1VsQuadrature => prop1_vs_quadrature(grid),
        Identity::Lemma1Pos => partial_relation(identity, grid, |m| m >= 0.0, true),
        Identity::Lemma1Neg => partial_relation(identity, grid, |m| m < 0.0, false),
        Identity::Thm3 => partial_relation(identity, grid, |_| true, true),
        Identity::Cor1 => partial_relation(identity, grid, |_| true, false),
        Identity::Thm2 => central_relation(grid),
        Identity::Thm4 => theorem4(grid),
        Identity::EulerEq6 => euler(),
        Identity::ConnectionEq7 => connection(),
        Identity::LegendreDup => legendre(),
    }
}

fn dists(grid: &VerifyGrid) -> impl Iterator<Item = StudentT> + '_ {
    grid.dofs.iter().filter_map(|&n| StudentT::new(n).ok())
}

/// Closed-form complete moments against adaptive quadrature. Where the closed
/// form is exactly zero by parity (odd order at `m = 0`), the quadrature
/// value is measured against `E|Y - m|^j` instead.
fn prop1_vs_quadrature(grid: &VerifyGrid) -> VerificationReport {
    let mut report = ReportBuilder::new(Identity::Prop1VsQuadrature, grid.describe(), PROP1_TOL);
    for dist in dists(grid) {
        let n = dist.dof();
        for j in 0..n {
            for &m in &grid.centers {
                let err = (|| {
                    let closed = dist.central_moment(j, m)?;
                    let upper =
                        oracle::quad_partial_moment(n, j, m, Side::Upper, &grid.quadrature)?;
                    let lower =
                        oracle::quad_partial_moment(n, j, m, Side::Lower, &grid.quadrature)?;
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    let quad = upper + sign * lower;
                    if closed == 0.0 {
                        Ok(quad.abs() / (upper + lower))
                    } else {
                        Ok(rel_error(closed, quad))
                    }
                })();
                report.record_result(err, || format!("n={n} j={j} m={m}"));
            }
        }
    }
    report.finish()
}

/// `E[((Y-m)_±)^{n-j}] = (m²+n)^{(n-2j+1)/2} E[((Y-m)_±)^{j-1}]` for `j = 1..=n`.
fn partial_relation(
    identity: Identity,
    grid: &VerifyGrid,
    keep: impl Fn(f64) -> bool,
    upper: bool,
) -> VerificationReport {
    let mut report = ReportBuilder::new(identity, grid.describe(), PARTIAL_RELATION_TOL);
    for dist in dists(grid) {
        let n = dist.dof();
        for j in 1..=n {
            for &m in grid.centers.iter().filter(|&&m| keep(m)) {
                let err = (|| {
                    let moment = |order| {
                        if upper {
                            dist.upper_partial_moment(order, m)
                        } else {
                            dist.lower_partial_moment(order, m)
                        }
                    };
                    let factor = interorder_factor(n, j, m)?.value;
                    Ok(rel_error(moment(n - j)?, factor * moment(j - 1)?))
                })();
                report.record_result(err, || format!("n={n} j={j} m={m}"));
            }
        }
    }
    report.finish()
}

fn central_relation(grid: &VerifyGrid) -> VerificationReport {
    let mut report = ReportBuilder::new(Identity::Thm2, grid.describe(), CENTRAL_RELATION_TOL);
    for dist in dists(grid) {
        let n = dist.dof();
        for j in 1..=n {
            for &m in &grid.centers {
                let err = (|| {
                    let direct = dist.central_moment(n - j, m)?;
                    let via = dist.central_moment_via_relation(j, m)?;
                    Ok(rel_error(direct, via))
                })();
                report.record_result(err, || format!("n={n} j={j} m={m}"));
            }
        }
    }
    report.finish()
}

fn theorem4(grid: &VerifyGrid) -> VerificationReport {
    let mut report = ReportBuilder::new(
        Identity::Thm4,
        format!("n in {:?}, {} tau values", grid.dofs, grid.taus.len()),
        lpq::SYMMETRY_TOL,
    );
    for dist in dists(grid) {
        report.absorb(lpq::verify_theorem4(&dist, &grid.taus));
    }
    report.finish()
}

/// Parameter sets `(a, b, c)` with `c > a > 0` used for the Euler check.
pub fn euler_parameters() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for &a in &[0.25, 0.5, 1.0, 1.5, 2.5] {
        for &b in &[-1.5, -0.5, 0.5, 1.0, 3.0] {
            for &dc in &[0.5, 1.25, 2.0] {
                out.push((a, b, a + dc));
            }
        }
    }
    out
}

fn euler() -> VerificationReport {
    let zs = center_grid(-5.0, 0.9, 0.1);
    let params = euler_parameters();
    let mut report = ReportBuilder::new(
        Identity::EulerEq6,
        format!(
            "{} (a,b,c) with c>a>0, z in [-5, 0.9] step 0.1",
            params.len()
        ),
        EULER_TOL,
    );
    for &(a, b, c) in &params {
        for &z in &zs {
            let err = specfun::euler_transform_check(Hyp2F1Args { a, b, c, z })
                .map(|(l, r)| rel_error(l, r));
            report.record_result(err, || format!("a={a} b={b} c={c} z={z}"));
        }
    }
    report.finish()
}

/// Parameter sets `(a, b, c)` with `a - b` not an integer.
pub fn connection_parameters() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for &a in &[0.3, 0.7, 1.2, 2.5] {
        for &b in &[0.45, 1.6, 3.1] {
            for &c in &[1.5, 2.75, 4.2] {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// The connection formula with `b - c - 1` in place of `b - c + 1` in the
/// second hypergeometric factor, evaluated only to report how far it is off.
fn connection_shifted_variant(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let gamma = |x: f64| libm::tgamma(x);
    let t1 = gamma(c) * gamma(b - a) / (gamma(b) * gamma(c - a))
        * (-z).powf(-a)
        * specfun::hyp2f1(Hyp2F1Args {
            a,
            b: a - c + 1.0,
            c: a - b + 1.0,
            z: 1.0 / z,
        })?;
    let t2 = gamma(c) * gamma(a - b) / (gamma(a) * gamma(c - b))
        * (-z).powf(-b)
        * specfun::hyp2f1(Hyp2F1Args {
            a: b - c - 1.0,
            b,
            c: b - a + 1.0,
            z: 1.0 / z,
        })?;
    Ok(t1 + t2)
}

fn connection() -> VerificationReport {
    let zs = center_grid(-50.0, -1.5, 0.5);
    let params = connection_parameters();
    let mut report = ReportBuilder::new(
        Identity::ConnectionEq7,
        format!(
            "{} (a,b,c) with a-b not integer, z in [-50, -1.5] step 0.5",
            params.len()
        ),
        CONNECTION_TOL,
    );
    let mut variant_dev: f64 = 0.0;
    for &(a, b, c) in &params {
        for &z in &zs {
            let args = Hyp2F1Args { a, b, c, z };
            // Measured against the absolute-term magnitude of the connection
            // sum, so that zeros of 2F1 inside the grid do not divide by ~0.
            let checked = (|| {
                let terms = specfun::connection_terms(args)?;
                let (lhs, rhs) = specfun::connection_check(args)?;
                let scale = lhs.abs().max(rhs.abs()).max(terms.magnitude);
                Ok((lhs, (lhs - rhs).abs() / scale, scale))
            })();
            if let Ok((lhs, _, scale)) = checked {
                if let Ok(v) = connection_shifted_variant(a, b, c, z) {
                    variant_dev = variant_dev.max((lhs - v).abs() / scale);
                }
            }
            report.record_result(checked.map(|(_, err, _)| err), || {
                format!("a={a} b={b} c={c} z={z}")
            });
        }
    }
    report.note(format!(
        "second term uses 2F1(b, b-c+1; b-a+1; 1/z); with b-c-1 in that slot the \
         identity is off by up to {variant_dev:.3e} (relative)"
    ));
    report.finish()
}

fn legendre() -> VerificationReport {
    let zs: Vec<f64> = (1..=1000).map(|i| f64::from(i) * 0.05).collect();
    let mut report = ReportBuilder::new(
        Identity::LegendreDup,
        "z in (0, 50] step 0.05, log space".into(),
        LEGENDRE_TOL,
    );
    for &z in &zs {
        let err = specfun::legendre_duplication_check(z).map(|(l, r)| (l - r).abs());
        report.record_result(err, || format!("z={z}"));
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.as_str().parse::<Identity>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert!("thm5".parse::<Identity>().is_err());
    }

    #[test]
    fn grids() {
        let g = center_grid(-10.0, 10.0, 0.5);
        assert_eq!(g.len(), 41);
        assert_eq!(g[20], 0.0);
        assert_eq!(*g.last().unwrap(), 10.0);
        assert_eq!(center_grid(-4.0, 4.0, 0.1).len(), 81);
        let t = tau_grid(3);
        assert_eq!(t, vec![0.25, 0.5, 0.75]);
        assert_eq!(tau_grid(99).len(), 99);
    }

    #[test]
    fn report_pass_flag_tracks_tolerance() {
        let mut b = ReportBuilder::new(Identity::Thm2, "g".into(), 1e-3);
        b.record(1e-4);
        assert!(b.finish().passed);
        let mut b = ReportBuilder::new(Identity::Thm2, "g".into(), 1e-3);
        b.record(1e-2);
        assert!(!b.finish().passed);
        let mut b = ReportBuilder::new(Identity::Thm2, "g".into(), 1e-3);
        b.fail("boom".into());
        assert!(!b.finish().passed);
    }

    #[test]
    fn shifted_connection_variant_is_wrong() {
        let (a, b, c, z) = (0.3, 1.6, 2.75, -7.0);
        let truth = specfun::hyp2f1(Hyp2F1Args { a, b, c, z }).unwrap();
        let variant = connection_shifted_variant(a, b, c, z).unwrap();
        assert!(rel_error(truth, variant) > 1e-3);
    }
}
