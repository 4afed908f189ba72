use std::fmt;

use thiserror::Error;

/// Location and message of a parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostics {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.position, self.message)
    }
}

/// Which derivative domain a point was checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainName {
    Delta,
    Nabla,
    Both,
}

impl fmt::Display for DomainName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainName::Delta => "T^kappa",
            DomainName::Nabla => "T_kappa",
            DomainName::Both => "T^kappa_kappa",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Syntax(ParseDiagnostics),

    #[error("invalid segment [{lo}, {hi}]: lower bound exceeds upper bound or is not finite")]
    InvalidSegment { lo: f64, hi: f64 },

    #[error("invalid step {h}: must be finite and positive")]
    InvalidStep { h: f64 },

    #[error("time scale must contain at least one point")]
    EmptyScale,

    #[error("{t} is not a point of the time scale")]
    PointNotInScale { t: f64 },

    #[error("{t} is not in {domain}")]
    PointNotInDomain { t: f64, domain: DomainName },

    #[error("derivative domain is empty (single-point time scale)")]
    EmptyDomain,

    #[error("degenerate range: the time scale has a single point")]
    DegenerateRange,

    #[error("domain error at t = {t} in `{node}`: {reason}")]
    Domain {
        t: f64,
        node: String,
        reason: String,
    },

    #[error("derivative at t = {t} did not converge after {iters} refinements (last change {last_change:e})")]
    NoConvergence {
        t: f64,
        iters: usize,
        last_change: f64,
    },

    #[error(
        "quadrature on [{lo}, {hi}] hit the depth limit with error {err:e} > tolerance {tol:e}"
    )]
    QuadratureFailure {
        lo: f64,
        hi: f64,
        err: f64,
        tol: f64,
    },

    #[error("alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),

    #[error("exponent p = {0} must exceed 1")]
    ExponentOutOfRange(f64),

    #[error("g changes sign on the range: g({t_neg}) < 0 < g({t_pos})")]
    SignChange { t_neg: f64, t_pos: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
