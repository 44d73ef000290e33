//! Moments of the Student t distribution with integer degrees of freedom.
//!
//! * [`specfun`]: Gamma/Beta helpers and the Gauss hypergeometric function `2F1`.
//! * [`tdist`]: density, CDF, raw, central and partial moments, and the
//!   inter-order factor `(m² + n)^{(n-2j+1)/2}`.
//! * [`lpq`]: L_p-quantiles from the first-order condition.
//! * [`oracle`]: quadrature and Monte Carlo references that share no code
//!   with the closed forms.
//! * [`verify`]: identity checks over parameter grids.
//! * [`cli`]: the `tmoments` command-line front end.
//!
//! ```
//! use tmoments::StudentT;
//!
//! let t5 = StudentT::new(5).unwrap();
//! assert!((t5.raw_moment(2).unwrap() - 5.0 / 3.0).abs() < 1e-12);
//! ```

// Domain guards are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod lpq;
pub mod oracle;
mod roots;
pub mod specfun;
pub mod tdist;
pub mod verify;

pub use error::{Error, HypPath, Result};
pub use lpq::{lp_quantile, LpQuantileQuery};
pub use specfun::{hyp2f1, Hyp2F1Args};
pub use tdist::{interorder_factor, InterOrderFactor, MomentKind, MomentQuery, StudentT};
pub use verify::{Identity, VerificationReport, VerifyGrid};
