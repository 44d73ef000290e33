// Plot data for the inter-order factor `(m² + n)^{(n-2j+1)/2}` over
// `m ∈ [-4, 4]`, for `n ∈ {2, 3, 4, 5}`.
//
// `cargo run --example factor_curves > factor.csv` writes one CSV block per
// `n`; each block has a header `m,j_1,...,j_n`.

use std::error::Error;

use tmoments::cli::factor_curve;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let centers: Vec<f64> = (0..81).map(|i| -4.0 + 0.1 * f64::from(i)).collect();
    for n in 2u32..=5 {
        let js: Vec<u32> = (1..=n).collect();
        let curve = factor_curve(n, &js, &centers)?;
        println!("# n = {n}");
        print!("{}", curve.to_csv());

        // Even in m, extremal at m = 0 with value n^{(n-2j+1)/2}.
        let mid = &curve.rows[40];
        for (k, &j) in js.iter().enumerate() {
            let expected = f64::from(n).powf((f64::from(n) - 2.0 * f64::from(j) + 1.0) / 2.0);
            assert_eq!(mid[k + 1], expected);
            assert_eq!(curve.rows[0][k + 1], curve.rows[80][k + 1]);
        }
        // For odd n the middle index j = (n+1)/2 gives the constant 1.
        if n % 2 == 1 {
            let col = (n as usize).div_ceil(2);
            assert!(curve.rows.iter().all(|row| row[col] == 1.0));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
