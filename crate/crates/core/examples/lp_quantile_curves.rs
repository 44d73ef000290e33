// L_p-quantile curves `τ ↦ ρ_{p,τ}` for `p = 1..=n`. Powers `j` and
// `n - j + 1` trace the same curve.
//
// `cargo run --example lp_quantile_curves > lpq.csv`

use std::error::Error;

use tmoments::cli::lpq_curve;
use tmoments::lpq::symmetry_pairs;
use tmoments::verify::tau_grid;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let taus = tau_grid(99);
    for n in [3u32, 4] {
        let ps: Vec<u32> = (1..=n).collect();
        let curve = lpq_curve(n, &ps, &taus)?;
        println!("# n = {n}");
        print!("{}", curve.to_csv());

        let mut worst: f64 = 0.0;
        for (j, k) in symmetry_pairs(n) {
            for row in &curve.rows {
                let (a, b) = (row[j as usize], row[k as usize]);
                worst = worst.max((a - b).abs() / (1.0 + a.abs()));
            }
        }
        eprintln!("n = {n}: largest gap between paired curves {worst:.2e}");
        assert!(worst <= 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
