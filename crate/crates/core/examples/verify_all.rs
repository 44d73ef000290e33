// Runs every identity over the default grid (`n = 1..=12`,
// `m ∈ {-10, -9.5, ..., 10}`, `τ ∈ {0.01, ..., 0.99}`) and prints one line
// per identity. Exits with an error if any identity fails.
//
// `cargo run --release --example verify_all`

use std::error::Error;

use tmoments::verify::{self, Identity, VerifyGrid};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid = VerifyGrid::default();
    let mut failed = Vec::new();
    println!(
        "{:<20} {:>6} {:>12} {:>10}  result",
        "identity", "evals", "max rel err", "tolerance"
    );
    for identity in Identity::ALL {
        let report = verify::run(identity, &grid);
        println!(
            "{:<20} {:>6} {:>12.3e} {:>10.0e}  {}",
            report.identity.as_str(),
            report.evaluations,
            report.max_rel_error,
            report.tolerance,
            if report.passed { "pass" } else { "FAIL" }
        );
        if let Some(note) = &report.note {
            println!("    note: {note}");
        }
        if !report.passed {
            failed.push(identity);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(format!("failed identities: {failed:?}").into())
    }
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
