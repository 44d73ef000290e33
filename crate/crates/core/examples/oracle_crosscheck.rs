// Closed-form partial moments against two independent references:
// adaptive Gauss-Kronrod quadrature and seeded Monte Carlo.
//
// `TMOMENTS_SEED=7 cargo run --release --example oracle_crosscheck`

use std::error::Error;

use tmoments::oracle::{
    mc_partial_moment, quad_partial_moment_with_error, McSpec, QuadratureSpec, Side,
};
use tmoments::StudentT;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let quad = QuadratureSpec::default();
    let mc = McSpec::new(200_000, 20_240_601)?.with_env_seed();
    println!("Monte Carlo: {} samples, seed {}", mc.samples(), mc.seed());
    println!(
        "{:>2} {:>2} {:>5} {:>20} {:>20} {:>9} {:>16} {:>7}",
        "n", "j", "m", "closed form", "quadrature", "quad err", "monte carlo", "z-score"
    );
    for (n, j, m) in [
        (5u32, 1u32, 0.3),
        (6, 2, -1.0),
        (9, 3, 2.5),
        (12, 4, 0.0),
        (3, 0, 1.0),
    ] {
        let dist = StudentT::new(n)?;
        let closed = dist.upper_partial_moment(j, m)?;
        let q = quad_partial_moment_with_error(n, j, m, Side::Upper, &quad)?;
        let est = mc_partial_moment(n, j, m, Side::Upper, &mc);
        let z = (est.estimate - closed) / est.stderr;
        println!(
            "{n:>2} {j:>2} {m:>5} {closed:>20.14} {:>20.14} {:>9.1e} {:>16.6} {z:>7.2}",
            q.value,
            (q.value - closed).abs() / closed,
            est.estimate
        );
        assert!((q.value - closed).abs() <= 1e-9 * closed);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
