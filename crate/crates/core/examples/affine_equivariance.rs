// `ρ_{p,τ}(a + bY) = a + b ρ_{p,τ}(Y)` for `b > 0`, checked against the
// quadrature oracle, which integrates the transformed density directly.
//
// `cargo run --example affine_equivariance`

use std::error::Error;

use tmoments::oracle::{quad_lp_quantile_affine, QuadratureSpec};
use tmoments::{lp_quantile, LpQuantileQuery, StudentT};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = QuadratureSpec::default();
    let (a, b) = (1.5, 2.0);
    println!("X = {a} + {b} Y");
    println!(
        "{:>2} {:>2} {:>5} {:>20} {:>20}",
        "n", "p", "tau", "mapped closed form", "quadrature on X"
    );
    for (n, p, tau) in [(3u32, 2u32, 0.2), (4, 3, 0.75), (6, 4, 0.05), (5, 1, 0.6)] {
        let dist = StudentT::new(n)?;
        let mapped = lp_quantile(&dist, &LpQuantileQuery::new(p, tau).affine(a, b))?;
        let direct = quad_lp_quantile_affine(n, p, tau, a, b, &spec)?;
        println!("{n:>2} {p:>2} {tau:>5} {mapped:>20.14} {direct:>20.14}");
        assert!((mapped - direct).abs() <= 1e-8 * (1.0 + mapped.abs()));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
