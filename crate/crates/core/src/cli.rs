//! The `tmoments` command line: `moment`, `lpq`, `curve` and `verify`.
//!
//! Exit codes are stable across commands:
//!
//! | code | meaning                        |
//! |------|--------------------------------|
//! | 0    | success                        |
//! | 1    | an identity failed to verify   |
//! | 2    | usage error (bad flags)        |
//! | 3    | domain error or non-finite output |
//! | 4    | I/O error                      |
//!
//! Scalar commands print JSON by default and curves print CSV. Reals in CSV
//! are written with 17 significant digits.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lpq::{self, LpQuantileQuery};
use crate::oracle::{McSpec, QuadratureSpec, SEED_ENV};
use crate::tdist::{interorder_factor, MomentKind, MomentQuery, StudentT};
use crate::verify::{self, center_grid, tau_grid, Identity, VerificationReport, VerifyGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "tmoments",
    version,
    about = "Student t moments, inter-order identities and L_p-quantiles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complete or partial moment of order j about m.
    Moment(MomentArgs),
    /// L_p-quantile of a + b Y.
    Lpq(LpqArgs),
    /// Factor curves over m or L_p-quantile curves over tau, as CSV.
    Curve(CurveArgs),
    /// Check identities over parameter grids.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Complete,
    Upper,
    Lower,
}

impl From<KindArg> for MomentKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Complete => MomentKind::Complete,
            KindArg::Upper => MomentKind::UpperPartial,
            KindArg::Lower => MomentKind::LowerPartial,
        }
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MomentArgs {
    /// Degrees of freedom.
    #[arg(long)]
    pub n: u32,
    /// Moment order, at most n-1.
    #[arg(long)]
    pub j: u32,
    /// Center.
    #[arg(long, default_value_t = 0.0)]
    pub m: f64,
    #[arg(long, value_enum, default_value_t = KindArg::Complete)]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct LpqArgs {
    /// Degrees of freedom.
    #[arg(long)]
    pub n: u32,
    /// Loss power, 1 <= p <= n.
    #[arg(long)]
    pub p: u32,
    /// Asymmetry level, strictly between 0 and 1.
    #[arg(long)]
    pub tau: f64,
    /// Location of the affine map a + b Y.
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    /// Scale of the affine map a + b Y (positive).
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Also solve for the partner power n-p+1 and report the difference.
    #[arg(long)]
    pub pair: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    /// (m² + n)^{(n-2j+1)/2} over an m grid, one column per j.
    Factor,
    /// ρ_{p,τ} over a τ grid, one column per p.
    Lpq,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CurveArgs {
    #[arg(value_enum)]
    pub kind: CurveKind,
    /// Degrees of freedom.
    #[arg(long)]
    pub n: u32,
    /// Factor indices (default 1..=n).
    #[arg(long, value_delimiter = ',')]
    pub j: Vec<u32>,
    /// Loss powers (default 1..=n).
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u32>,
    #[arg(long, default_value_t = -4.0)]
    pub m_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub m_max: f64,
    /// Number of m grid points, endpoints included.
    #[arg(long, default_value_t = 81)]
    pub steps: usize,
    /// Number of interior τ levels i/(k+1).
    #[arg(long, default_value_t = 99)]
    pub tau_steps: usize,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Degrees of freedom to check.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12])]
    pub n: Vec<u32>,
    /// Identities to run (default: all).
    #[arg(long, value_delimiter = ',')]
    pub identities: Vec<Identity>,
    #[arg(long, default_value_t = -4.0)]
    pub m_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub m_max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub m_step: f64,
    /// Number of interior τ levels i/(k+1).
    #[arg(long, default_value_t = 99)]
    pub tau_steps: usize,
    /// Monte Carlo seed; overridden by $TMOMENTS_SEED.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// One labelled real in an [`OutputRecord`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Labeled {
    pub label: String,
    pub value: f64,
}

/// Result of a scalar command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub values: Vec<Labeled>,
    pub metadata: BTreeMap<String, String>,
}

impl OutputRecord {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            inputs: BTreeMap::new(),
            values: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_owned(), value.to_string());
        self
    }

    fn push(&mut self, label: impl Into<String>, value: f64) {
        self.values.push(Labeled {
            label: label.into(),
            value,
        });
    }

    fn check_finite(&self) -> Result<(), CliError> {
        match self.values.iter().find(|v| !v.value.is_finite()) {
            Some(v) => Err(CliError::Domain(format!(
                "non-finite output for {}: {}",
                v.label, v.value
            ))),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,value\n");
        for v in &self.values {
            let _ = writeln!(out, "{},{}", v.label, fmt_real(v.value));
        }
        out
    }
}

/// Output of the `verify` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub command: String,
    pub passed: bool,
    pub metadata: BTreeMap<String, String>,
    pub reports: Vec<VerificationReport>,
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

/// Scientific notation with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}

/// Parses `args` (including the program name), runs the command, writes the
/// result to `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Moment(args) => cmd_moment(&args).and_then(|r| emit_record(&r, args.format, out)),
        Command::Lpq(args) => cmd_lpq(&args).and_then(|r| emit_record(&r, args.format, out)),
        Command::Curve(args) => cmd_curve(&args, out),
        Command::Verify(args) => cmd_verify(&args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
}

fn emit_record(
    record: &OutputRecord,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    record.check_finite()?;
    let text = match format {
        Format::Json => record.to_json() + "\n",
        Format::Csv => record.to_csv(),
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn kind_label(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Complete => "complete",
        KindArg::Upper => "upper",
        KindArg::Lower => "lower",
    }
}

fn cmd_moment(args: &MomentArgs) -> Result<OutputRecord, CliError> {
    let dist = StudentT::new(args.n)?;
    let query = MomentQuery {
        order: args.j,
        center: args.m,
        kind: args.kind.into(),
    };
    let value = dist.moment(query)?;
    let mut record = OutputRecord::new("moment")
        .input("n", args.n)
        .input("j", args.j)
        .input("m", args.m)
        .input("kind", kind_label(args.kind));
    record.push("moment", value);
    if args.kind != KindArg::Complete {
        // Order j and order n-1-j are linked through the factor with index n-j.
        let companion_order = args.n - 1 - args.j;
        let companion = dist.moment(MomentQuery {
            order: companion_order,
            ..query
        })?;
        let factor = interorder_factor(args.n, args.n - args.j, args.m)?;
        record.push(format!("companion_order_{companion_order}"), companion);
        record.push("factor", factor.value);
        record.metadata.insert(
            "relation".into(),
            format!(
                "moment = factor * companion (factor exponent {})",
                factor.exponent()
            ),
        );
    }
    Ok(record)
}

fn cmd_lpq(args: &LpqArgs) -> Result<OutputRecord, CliError> {
    let dist = StudentT::new(args.n)?;
    let query = LpQuantileQuery::new(args.p, args.tau).affine(args.a, args.b);
    let rho = lpq::lp_quantile(&dist, &query)?;
    let mut record = OutputRecord::new("lpq")
        .input("n", args.n)
        .input("p", args.p)
        .input("tau", args.tau)
        .input("a", args.a)
        .input("b", args.b);
    record.push(format!("rho_{}", args.p), rho);
    if args.pair {
        let partner = args.n - args.p + 1;
        let other = lpq::lp_quantile(
            &dist,
            &LpQuantileQuery {
                power: partner,
                ..query
            },
        )?;
        record.push(format!("rho_{partner}"), other);
        record.push("difference", other - rho);
    }
    record
        .metadata
        .insert("solver_tolerance".into(), lpq::SOLVE_TOL.to_string());
    Ok(record)
}

/// A table with a leading abscissa column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_real(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn linspace(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(min.is_finite() && max.is_finite() && min < max) || steps < 2 {
        return Err(CliError::Domain(format!(
            "grid needs finite m-min < m-max and at least 2 steps, got [{min}, {max}] with {steps}"
        )));
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                min + i as f64 * h
            }
        })
        .collect())
}

fn indices_or_all(given: &[u32], n: u32) -> Vec<u32> {
    if given.is_empty() {
        (1..=n).collect()
    } else {
        given.to_vec()
    }
}

pub fn factor_curve(n: u32, js: &[u32], centers: &[f64]) -> crate::Result<Curve> {
    let mut header = vec!["m".to_owned()];
    header.extend(js.iter().map(|j| format!("j_{j}")));
    let rows = centers
        .iter()
        .map(|&m| {
            let mut row = vec![m];
            for &j in js {
                row.push(interorder_factor(n, j, m)?.value);
            }
            Ok(row)
        })
        .collect::<crate::Result<_>>()?;
    Ok(Curve { header, rows })
}

pub fn lpq_curve(n: u32, ps: &[u32], taus: &[f64]) -> crate::Result<Curve> {
    let dist = StudentT::new(n)?;
    let mut header = vec!["tau".to_owned()];
    header.extend(ps.iter().map(|p| format!("p_{p}")));
    let rows = taus
        .par_iter()
        .map(|&tau| {
            let mut row = vec![tau];
            for &p in ps {
                row.push(lpq::lp_quantile(&dist, &LpQuantileQuery::new(p, tau))?);
            }
            Ok(row)
        })
        .collect::<crate::Result<_>>()?;
    Ok(Curve { header, rows })
}

fn cmd_curve(args: &CurveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let curve = match args.kind {
        CurveKind::Factor => {
            let centers = linspace(args.m_min, args.m_max, args.steps)?;
            factor_curve(args.n, &indices_or_all(&args.j, args.n), &centers)?
        }
        CurveKind::Lpq => {
            if args.tau_steps == 0 {
                return Err(CliError::Domain("tau-steps must be at least 1".into()));
            }
            lpq_curve(
                args.n,
                &indices_or_all(&args.p, args.n),
                &tau_grid(args.tau_steps),
            )?
        }
    };
    if let Some(bad) = curve.rows.iter().flatten().find(|x| !x.is_finite()) {
        return Err(CliError::Domain(format!("non-finite curve value {bad}")));
    }
    let text = match args.format {
        Format::Csv => curve.to_csv(),
        Format::Json => serde_json::to_string_pretty(&curve).expect("curve serialises") + "\n",
    };
    match &args.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => write_out(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    args: &VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    if !(args.m_step > 0.0
        && args.m_min.is_finite()
        && args.m_max.is_finite()
        && args.m_min <= args.m_max)
    {
        return Err(CliError::Domain(
            "m grid needs finite m-min <= m-max and m-step > 0".into(),
        ));
    }
    if args.n.contains(&0) {
        return Err(CliError::Domain("degrees of freedom must be >= 1".into()));
    }
    let mc = McSpec::default();
    let mc = McSpec::new(mc.samples(), args.seed.unwrap_or(mc.seed()))?.with_env_seed();
    let grid = VerifyGrid {
        dofs: args.n.clone(),
        centers: center_grid(args.m_min, args.m_max, args.m_step),
        taus: tau_grid(args.tau_steps),
        quadrature: QuadratureSpec::default(),
    };
    let identities: Vec<Identity> = if args.identities.is_empty() {
        Identity::ALL.to_vec()
    } else {
        args.identities.clone()
    };
    let reports: Vec<VerificationReport> = identities
        .par_iter()
        .map(|&id| verify::run(id, &grid))
        .collect();
    let passed = reports.iter().all(|r| r.passed);
    let mut metadata = BTreeMap::new();
    metadata.insert("seed".to_owned(), mc.seed().to_string());
    metadata.insert("seed_env".to_owned(), SEED_ENV.to_owned());
    metadata.insert("taus".to_owned(), grid.taus.len().to_string());
    let output = VerifyOutput {
        command: "verify".into(),
        passed,
        metadata,
        reports,
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&output).expect("report serialises") + "\n",
        Format::Csv => {
            let mut text = String::from("identity,evaluations,max_rel_error,tolerance,passed\n");
            for r in &output.reports {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{}",
                    r.identity,
                    r.evaluations,
                    fmt_real(r.max_rel_error),
                    fmt_real(r.tolerance),
                    r.passed
                );
            }
            text
        }
    };
    write_out(out, &text)?;
    for r in output.reports.iter().filter(|r| !r.passed) {
        let _ = writeln!(
            err,
            "FAILED {}: max_rel_error {:e} > tolerance {:e} ({} failures)",
            r.identity,
            r.max_rel_error,
            r.tolerance,
            r.failures.len()
        );
        for f in r.failures.iter().take(5) {
            let _ = writeln!(err, "  {f}");
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
