// Raw and central moments of the Student t distribution.
//
// `cargo run --example complete_moments`

use std::error::Error;

use tmoments::{MomentKind, MomentQuery, StudentT};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("raw moments E[Y^j] (moments exist for j <= n-1)");
    println!("{:>3} {:>4} {:>24}", "n", "j", "E[Y^j]");
    for n in [3u32, 5, 8] {
        let dist = StudentT::new(n)?;
        for j in 0..n {
            println!("{n:>3} {j:>4} {:>24.16e}", dist.raw_moment(j)?);
        }
    }

    // Variance n/(n-2) and the fourth moment 3n²/((n-2)(n-4)).
    let t5 = StudentT::new(5)?;
    assert!((t5.raw_moment(2)? - 5.0 / 3.0).abs() < 1e-12);
    assert!((t5.raw_moment(4)? - 25.0).abs() < 1e-12);

    println!();
    println!("central moments E[(Y-m)^j] for n = 6");
    let t6 = StudentT::new(6)?;
    for m in [-2.0, 0.0, 0.75, 3.0] {
        let row: Vec<String> = (0..6)
            .map(|j| t6.central_moment(j, m).map(|v| format!("{v:>12.5}")))
            .collect::<Result<_, _>>()?;
        println!("m = {m:>5}: {}", row.join(" "));
    }

    // The same value through the generic query interface.
    let q = MomentQuery {
        order: 3,
        center: 2.0,
        kind: MomentKind::Complete,
    };
    println!();
    println!("E[(Y-2)^3] for n = 5: {}", t5.moment(q)?);

    // Orders at or beyond n are rejected rather than returned as infinity.
    match StudentT::new(4)?.raw_moment(4) {
        Err(e) => println!("n = 4, j = 4: {e}"),
        Ok(v) => return Err(format!("expected nonexistence, got {v}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
