//! End-to-end tests of the `tmoments` binary: outputs, formats and exit codes.

use std::process::{Command, Output};

use tmoments::cli::{OutputRecord, VerifyOutput};

fn tmoments(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmoments"))
        .args(args)
        .env_remove("TMOMENTS_SEED")
        .output()
        .expect("binary runs")
}

fn record(args: &[&str]) -> OutputRecord {
    let out = tmoments(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON record")
}

fn csv_rows(stdout: &[u8]) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = String::from_utf8(stdout.to_vec()).unwrap();
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn moment_examples() {
    let r = record(&[
        "moment", "--n", "3", "--j", "2", "--m", "0", "--kind", "complete",
    ]);
    assert!((r.values[0].value - 3.0).abs() < 1e-12);
    assert_eq!(r.inputs["kind"], "complete");

    let r = record(&[
        "moment", "--n", "4", "--j", "0", "--m", "0", "--kind", "upper",
    ]);
    assert!((r.values[0].value - 0.5).abs() < 1e-15);

    let out = tmoments(&[
        "moment", "--n", "4", "--j", "4", "--m", "0", "--kind", "complete",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not exist"));
}

#[test]
fn partial_moment_reports_companion_and_factor() {
    let r = record(&[
        "moment", "--n", "7", "--j", "2", "--m", "-1.25", "--kind", "lower",
    ]);
    let labels: Vec<&str> = r.values.iter().map(|v| v.label.as_str()).collect();
    assert_eq!(labels, ["moment", "companion_order_4", "factor"]);
    let (moment, companion, factor) = (r.values[0].value, r.values[1].value, r.values[2].value);
    assert!((moment - factor * companion).abs() <= 1e-10 * moment);
}

#[test]
fn lpq_examples() {
    let r = record(&["lpq", "--n", "3", "--p", "1", "--tau", "0.5"]);
    assert_eq!(r.values[0].value, 0.0);

    let r = record(&["lpq", "--n", "4", "--p", "2", "--tau", "0.9", "--pair"]);
    assert_eq!(r.values.len(), 3);
    assert!((r.values[0].value - r.values[1].value).abs() <= 1e-9);
    assert!(r.values[2].value.abs() <= 1e-9);

    assert_eq!(
        tmoments(&["lpq", "--n", "2", "--p", "3", "--tau", "0.5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        tmoments(&["lpq", "--n", "2", "--p", "1", "--tau", "1.5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        tmoments(&["lpq", "--n", "2", "--p", "1", "--tau", "0.4", "--b", "-1"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn lpq_affine_flags() {
    let base = record(&["lpq", "--n", "5", "--p", "3", "--tau", "0.3"]).values[0].value;
    let mapped = record(&[
        "lpq", "--n", "5", "--p", "3", "--tau", "0.3", "--a", "-2", "--b", "0.5",
    ]);
    assert_eq!(mapped.values[0].value, -2.0 + 0.5 * base);
}

#[test]
fn factor_curve_has_constant_column() {
    let out = tmoments(&[
        "curve", "factor", "--n", "3", "--m-min", "-4", "--m-max", "4", "--steps", "81",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(header, ["m", "j_1", "j_2", "j_3"]);
    assert_eq!(rows.len(), 81);
    assert!(rows.iter().all(|r| r[2] == 1.0));
    assert_eq!(rows[0][0], -4.0);
    assert_eq!(rows[80][0], 4.0);
}

#[test]
fn lpq_curve_midpoint_is_zero() {
    let out = tmoments(&["curve", "lpq", "--n", "3", "--tau-steps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(header, ["tau", "p_1", "p_2", "p_3"]);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1][0], 0.5);
    assert!(rows[1][1..].iter().all(|&x| x == 0.0));
}

#[test]
fn lpq_curve_pairs_coincide() {
    let out = tmoments(&["curve", "lpq", "--n", "4", "--tau-steps", "99"]);
    let (_, rows) = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 99);
    for r in rows {
        assert!(
            (r[1] - r[4]).abs() <= 1e-9 && (r[2] - r[3]).abs() <= 1e-9,
            "{r:?}"
        );
    }
}

#[test]
fn csv_is_plain_and_full_precision() {
    let out = tmoments(&["curve", "factor", "--n", "2", "--steps", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let cell = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .to_owned();
    // 17 significant digits: d.dddddddddddddddde±x
    let mantissa = cell.split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 17, "{cell}");
}

#[test]
fn curve_writes_to_file_and_reports_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("factor.csv");
    let out = tmoments(&[
        "curve",
        "factor",
        "--n",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 82);

    let missing = dir.path().join("no/such/dir/factor.csv");
    let out = tmoments(&[
        "curve",
        "factor",
        "--n",
        "4",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tmoments(&[]).status.code(), Some(2));
    assert_eq!(
        tmoments(&["moment", "--n", "three", "--j", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tmoments(&["verify", "--identities", "thm9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tmoments(&["curve", "surface", "--n", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn bad_grid_is_a_domain_error() {
    let out = tmoments(&[
        "curve", "factor", "--n", "3", "--m-min", "2", "--m-max", "-2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    for args in [
        &[
            "moment", "--n", "9", "--j", "5", "--m", "0.3", "--kind", "upper",
        ][..],
        &["lpq", "--n", "6", "--p", "4", "--tau", "0.137", "--pair"][..],
    ] {
        let out = tmoments(args);
        let text = String::from_utf8(out.stdout).unwrap();
        let parsed: OutputRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json() + "\n", text);
    }
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "--n", "2,3,4,5", "--identities", "thm4"][..],
        &["verify", "--n", "3", "--identities", "prop1_vs_quadrature"][..],
        &["verify", "--n", "6", "--identities", "thm3,cor1"][..],
    ] {
        let out = tmoments(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let report: VerifyOutput = serde_json::from_slice(&out.stdout).unwrap();
        assert!(report.passed);
        assert!(report
            .reports
            .iter()
            .all(|r| r.passed && r.max_rel_error <= r.tolerance));
    }
}

#[test]
fn verify_failure_exits_1_and_highlights_report() {
    // An empty τ grid leaves nothing to check, which counts as a failure.
    let out = tmoments(&[
        "verify",
        "--n",
        "3",
        "--identities",
        "thm4",
        "--tau-steps",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAILED thm4"));
}

#[test]
fn verify_csv_lists_every_identity() {
    let out = tmoments(&["verify", "--n", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn seed_env_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_tmoments"))
        .args([
            "verify",
            "--n",
            "2",
            "--identities",
            "legendre_dup",
            "--seed",
            "5",
        ])
        .env("TMOMENTS_SEED", "99")
        .output()
        .unwrap();
    let report: VerifyOutput = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.metadata["seed"], "99");

    let out = tmoments(&[
        "verify",
        "--n",
        "2",
        "--identities",
        "legendre_dup",
        "--seed",
        "5",
    ]);
    let report: VerifyOutput = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.metadata["seed"], "5");
}
