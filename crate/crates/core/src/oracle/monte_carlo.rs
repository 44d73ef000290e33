//! Seeded Monte Carlo estimates of partial moments.
//!
//! Variates are `Z / sqrt(χ²_n / n)` with `χ²_n` a sum of `n` squared
//! standard normals. Samples are split into fixed-size chunks, each drawn
//! from its own ChaCha stream, so the estimate is bit-identical for a given
//! seed regardless of thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::Side;
use crate::error::{Error, Result};

/// Environment variable that overrides the Monte Carlo seed.
pub const SEED_ENV: &str = "TMOMENTS_SEED";
const CHUNK: u64 = 1 << 16;
const MIN_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McSpec {
    samples: u64,
    seed: u64,
}

impl Default for McSpec {
    fn default() -> Self {
        Self {
            samples: 10_000_000,
            seed: 0x7d15_ea5e,
        }
    }
}

impl McSpec {
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        if samples < MIN_SAMPLES {
            return Err(Error::Domain(format!(
                "Monte Carlo needs at least {MIN_SAMPLES} samples, got {samples}"
            )));
        }
        Ok(Self { samples, seed })
    }

    /// Replaces the seed with `$TMOMENTS_SEED` when it is set and parses.
    pub fn with_env_seed(self) -> Self {
        match std::env::var(SEED_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            Some(seed) => Self { seed, ..self },
            None => self,
        }
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
}

fn contribution(t: f64, j: u32, m: f64, side: Side) -> f64 {
    let d = t - m;
    match side {
        Side::Complete => d.powi(j as i32),
        Side::Upper if d > 0.0 => d.powi(j as i32),
        Side::Lower if d < 0.0 => (-d).powi(j as i32),
        _ => 0.0,
    }
}

/// Sample mean of the requested partial moment and its standard error.
///
/// For `2j >= n` the variance is infinite and the standard error is not
/// meaningful; a warning is logged.
pub fn mc_partial_moment(n: u32, j: u32, m: f64, side: Side, spec: &McSpec) -> McEstimate {
    if 2 * j >= n {
        log::warn!(
            "order {j} with {n} degrees of freedom has infinite sampling variance; stderr is unreliable"
        );
    }
    let dof = f64::from(n);
    let chunks = spec.samples.div_ceil(CHUNK);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(chunk);
            let count = CHUNK.min(spec.samples - chunk * CHUNK);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let z: f64 = rng.sample(StandardNormal);
                let chi2: f64 = (0..n)
                    .map(|_| {
                        let g: f64 = rng.sample(StandardNormal);
                        g * g
                    })
                    .sum();
                let t = z / (chi2 / dof).sqrt();
                let v = contribution(t, j, m, side);
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = sums
        .iter()
        .fold((0.0, 0.0), |(s, q), &(a, b)| (s + a, q + b));
    let count = spec.samples as f64;
    let mean = sum / count;
    let var = ((sum_sq / count - mean * mean) * count / (count - 1.0)).max(0.0);
    McEstimate {
        estimate: mean,
        stderr: (var / count).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(McSpec::new(9_999, 1).is_err());
        assert_eq!(McSpec::new(10_000, 7).unwrap().seed(), 7);
    }

    #[test]
    fn deterministic_for_seed() {
        let spec = McSpec::new(200_000, 42).unwrap();
        let a = mc_partial_moment(5, 1, 0.3, Side::Upper, &spec);
        let b = mc_partial_moment(5, 1, 0.3, Side::Upper, &spec);
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        let other = mc_partial_moment(5, 1, 0.3, Side::Upper, &McSpec::new(200_000, 43).unwrap());
        assert_ne!(a.estimate, other.estimate);
    }

    #[test]
    fn symmetric_mean_is_zero() {
        let spec = McSpec::new(500_000, 3).unwrap();
        let e = mc_partial_moment(4, 1, 0.0, Side::Complete, &spec);
        assert!(e.estimate.abs() <= 4.0 * e.stderr, "{e:?}");
    }

    #[test]
    fn zeroth_order_is_indicator() {
        assert_eq!(contribution(1.0, 0, 1.0, Side::Upper), 0.0);
        assert_eq!(contribution(1.5, 0, 1.0, Side::Upper), 1.0);
        assert_eq!(contribution(0.5, 0, 1.0, Side::Lower), 1.0);
        assert_eq!(contribution(0.5, 3, 1.0, Side::Lower), 0.125);
    }
}
