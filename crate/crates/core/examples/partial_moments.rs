// Upper and lower partial moments `E[((Y-m)_±)^j]` across the three
// evaluation routes (closed form for m >= 0.5, reflection for m <= -0.5,
// expansion around zero in between).
//
// `cargo run --example partial_moments`

use std::error::Error;

use tmoments::tdist::NEAR_ZERO_BAND;
use tmoments::StudentT;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dist = StudentT::new(7)?;
    println!("n = 7, order j = 3");
    println!("{:>6} {:>22} {:>22} {:>12}", "m", "upper", "lower", "route");
    for i in -8..=8 {
        let m = f64::from(i) * 0.25;
        let route = if m >= NEAR_ZERO_BAND {
            "closed form"
        } else if m <= -NEAR_ZERO_BAND {
            "reflection"
        } else {
            "near zero"
        };
        let upper = dist.upper_partial_moment(3, m)?;
        let lower = dist.lower_partial_moment(3, m)?;
        println!("{m:>6.2} {upper:>22.15e} {lower:>22.15e} {route:>12}");

        // upper - lower = E[(Y-m)^3] for odd orders.
        let central = dist.central_moment(3, m)?;
        assert!((upper - lower - central).abs() <= 1e-11 * (upper + lower));
    }

    // Zeroth-order upper partial moment is the survival function.
    let t4 = StudentT::new(4)?;
    let tail = t4.upper_partial_moment(0, 1.3)?;
    println!();
    println!(
        "P(Y > 1.3), n = 4: {tail:.16} (1 - cdf = {:.16})",
        1.0 - t4.cdf(1.3)
    );

    // Lower partial moments are reflections of upper ones.
    let lower = dist.lower_partial_moment(4, 2.5)?;
    let reflected = dist.upper_partial_moment(4, -2.5)?;
    println!("E[((Y-2.5)_-)^4] = {lower} = E[((Y+2.5)_+)^4] = {reflected}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
