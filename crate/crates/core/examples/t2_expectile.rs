// With two degrees of freedom, expectiles (p = 2) coincide with quantiles
// (p = 1) at every level; for other n they differ.
//
// `cargo run --example t2_expectile`

use std::error::Error;

use tmoments::lpq::quantile;
use tmoments::verify::tau_grid;
use tmoments::{lp_quantile, LpQuantileQuery, StudentT};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let t2 = StudentT::new(2)?;
    let mut worst: f64 = 0.0;
    println!("{:>6} {:>22} {:>22}", "tau", "quantile", "expectile");
    for tau in tau_grid(99) {
        let q = quantile(&t2, tau)?;
        let e = lp_quantile(&t2, &LpQuantileQuery::new(2, tau))?;
        worst = worst.max((q - e).abs() / (1.0 + q.abs()));
        if ((tau * 100.0).round() as u32).is_multiple_of(10) {
            println!("{tau:>6.2} {q:>22.16} {e:>22.16}");
        }
    }
    println!("n = 2: max |quantile - expectile| / (1 + |quantile|) = {worst:.2e}");
    assert!(worst <= 1e-9);

    // Quantile of t2 in closed form: (2τ - 1) / sqrt(2τ(1 - τ)).
    let tau: f64 = 0.9;
    let exact = (2.0 * tau - 1.0) / (2.0 * tau * (1.0 - tau)).sqrt();
    println!("closed-form t2 quantile at 0.9: {exact}");

    for n in [3u32, 5, 10] {
        let dist = StudentT::new(n)?;
        let q = quantile(&dist, 0.9)?;
        let e = lp_quantile(&dist, &LpQuantileQuery::new(2, 0.9))?;
        println!("n = {n:>2}: quantile {q:.6}, expectile {e:.6}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
