//! Global adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Hard cap on the number of subintervals.
const MAX_INTERVALS: usize = 20_000;

/// Adaptive quadrature controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_depth: 60,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_depth > 0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "quadrature tolerances and depth must be positive, got {self:?}"
            )))
        }
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error_bound: f64,
}

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, depth: u32) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        depth,
    }
}

/// Integrates `f` over `[lo, hi]`; `f` is never evaluated at the endpoints.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<QuadEstimate> {
    spec.validate()?;
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, lo, hi, 0);
    let mut value = first.value;
    let mut error = first.error;
    heap.push(first);
    loop {
        if !value.is_finite() {
            return Err(Error::Accuracy {
                estimate: value,
                error_bound: error,
            });
        }
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(QuadEstimate {
                value,
                error_bound: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= spec.max_depth || heap.len() + 2 > MAX_INTERVALS {
            return Err(Error::Accuracy {
                estimate: value,
                error_bound: error,
            });
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = gauss_kronrod(&f, worst.lo, mid, worst.depth + 1);
        let right = gauss_kronrod(&f, mid, worst.hi, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // re-sum to stop drift from the running updates
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let r = integrate(
            |x| x * x * x - 2.0 * x,
            0.0,
            3.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((r.value - (81.0 / 4.0 - 9.0)).abs() < 1e-13);
    }

    #[test]
    fn integrates_endpoint_singularity() {
        // ∫_0^1 ln x dx = -1
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn reports_depth_exhaustion() {
        let spec = QuadratureSpec {
            max_depth: 2,
            ..Default::default()
        };
        let err = integrate(|x: f64| x.powf(-0.9), 0.0, 1.0, &spec).unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }

    #[test]
    fn rejects_bad_spec() {
        let spec = QuadratureSpec {
            rel_tol: 0.0,
            ..Default::default()
        };
        assert!(integrate(|x| x, 0.0, 1.0, &spec).is_err());
    }
}
