use std::fmt;

use thiserror::Error;

/// Evaluation strategies tried by [`crate::specfun::hyp2f1`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypPath {
    Terminating,
    Direct,
    Pfaff,
    Connection,
}

impl fmt::Display for HypPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            HypPath::Terminating => "terminating series",
            HypPath::Direct => "direct series",
            HypPath::Pfaff => "Pfaff transform",
            HypPath::Connection => "connection formula",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("moment of order {order} does not exist for {dof} degrees of freedom (max order {})", dof - 1)]
    MomentNonexistent { order: u32, dof: u32 },

    #[error(
        "power p={p} is not supported for {dof} degrees of freedom (need {min} <= p <= {dof})"
    )]
    UnsupportedPower { p: u32, dof: u32, min: u32 },

    #[error("2F1({a}, {b}; {c}; {z}) has no convergent evaluation path (tried: {})", fmt_paths(.attempted))]
    Evaluation {
        a: f64,
        b: f64,
        c: f64,
        z: f64,
        attempted: Vec<HypPath>,
    },

    #[error("quadrature did not reach tolerance: estimate {estimate}, error bound {error_bound}")]
    Accuracy { estimate: f64, error_bound: f64 },

    #[error("root finder failed: {0}")]
    RootFinding(String),
}

fn fmt_paths(paths: &[HypPath]) -> String {
    if paths.is_empty() {
        return "none".to_owned();
    }
    paths
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
