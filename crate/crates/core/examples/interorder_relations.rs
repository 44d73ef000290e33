// Moments of order `n-j` are a fixed multiple of moments of order `j-1`:
//
// ```text
// E[((Y-m)_±)^{n-j}] = (m² + n)^{(n-2j+1)/2} E[((Y-m)_±)^{j-1}]
// ```
//
// and the central moment of order `n-j` follows from order `j-1`.
//
// `cargo run --example interorder_relations`

use std::error::Error;

use tmoments::verify::rel_error;
use tmoments::{interorder_factor, StudentT};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 6;
    let dist = StudentT::new(n)?;
    let m = 1.75;
    println!("n = {n}, m = {m}");
    println!(
        "{:>2} {:>8} {:>20} {:>20} {:>10}",
        "j", "orders", "upper(n-j)", "factor*upper(j-1)", "rel err"
    );
    for j in 1..=n {
        let factor = interorder_factor(n, j, m)?;
        let high = dist.upper_partial_moment(n - j, m)?;
        let low = dist.upper_partial_moment(j - 1, m)?;
        let err = rel_error(high, factor.value * low);
        println!(
            "{j:>2} {:>8} {high:>20.12e} {:>20.12e} {err:>10.1e}",
            format!("{}<-{}", n - j, j - 1),
            factor.value * low
        );
        assert!(err <= 1e-10);
    }

    println!();
    println!("lower partial moments, m = -3");
    for j in 1..=n {
        let factor = interorder_factor(n, j, -3.0)?;
        let high = dist.lower_partial_moment(n - j, -3.0)?;
        let low = dist.lower_partial_moment(j - 1, -3.0)?;
        println!(
            "j = {j}: exponent {:>4}, rel err {:.1e}",
            factor.exponent(),
            rel_error(high, factor.value * low)
        );
    }

    println!();
    println!(
        "central moments via the relation (odd n uses the pure form, even n adds a partial moment)"
    );
    for n in [5u32, 6] {
        let dist = StudentT::new(n)?;
        for j in 1..=n {
            let direct = dist.central_moment(n - j, 0.8)?;
            let via = dist.central_moment_via_relation(j, 0.8)?;
            println!("n = {n}, order {}: {direct:>14.8} vs {via:>14.8}", n - j);
            assert!(rel_error(direct, via) <= 1e-11);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
