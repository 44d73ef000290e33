// The Gauss hypergeometric function `2F1` on the real line and the
// transformation identities used to cross-check it.
//
// `cargo run --example hypergeometric`

use std::error::Error;

use tmoments::specfun::{
    connection_check, euler_transform_check, hyp2f1, legendre_duplication_check, pfaff_check,
    Hyp2F1Args,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // Terminating: 2F1(-2, b; c; z) is a quadratic in z for any real z.
    let poly = hyp2f1(Hyp2F1Args::new(-2.0, 3.0, 4.0, -7.5)?)?;
    let exact = 1.0 + 2.0 * (-3.0 / 4.0) * -7.5 + (3.0 * 4.0) / (4.0 * 5.0) * 56.25;
    println!("2F1(-2, 3; 4; -7.5) = {poly} (exact {exact})");

    // Elementary closed forms on each path.
    for z in [0.5, -0.5, -3.0, -1.0e6] {
        let v = hyp2f1(Hyp2F1Args::new(0.5, 1.0, 1.5, z)?)?;
        let x = (-z).abs().sqrt();
        let exact = if z > 0.0 {
            (1.0 / x) * x.atanh()
        } else {
            x.atan() / x
        };
        println!("2F1(1/2, 1; 3/2; {z:>9}) = {v:.16} (closed form {exact:.16})");
    }

    let args = Hyp2F1Args::new(0.3, 1.7, 2.2, -0.6)?;
    let (l, r) = euler_transform_check(args)?;
    println!("Euler:    {l:.16} = {r:.16}");
    let (l, r) = pfaff_check(args)?;
    println!("Pfaff:    {l:.16} = {r:.16}");
    let (l, r) = connection_check(Hyp2F1Args::new(0.3, 1.7, 2.2, -12.0)?)?;
    println!("1/z form: {l:.16} = {r:.16}");
    let (l, r) = legendre_duplication_check(3.7)?;
    println!("Legendre: {l:.16} = {r:.16} (log space)");

    // Non-convergent requests report which paths were tried.
    match hyp2f1(Hyp2F1Args::new(0.5, 1.5, 2.5, 1.5)?) {
        Err(e) => println!("z = 1.5: {e}"),
        Ok(v) => return Err(format!("expected an evaluation error, got {v}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
