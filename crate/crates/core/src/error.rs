use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    Pole(String),

    #[error("{what}: no convergence after {terms} terms (last term magnitude {last:e})")]
    NonConvergence {
        what: &'static str,
        terms: usize,
        last: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside the implemented domain: {0}")]
    Domain(String),

    #[error("overflow while evaluating {0}")]
    Overflow(String),

    #[error("outside the series regime: {0}")]
    Regime(String),

    #[error("quadrature tolerance not met: achieved {achieved:e}, requested {requested:e}")]
    Tolerance { achieved: f64, requested: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("blow-up detected at t = {t}: sup norm grew by a factor {ratio:.3}")]
    BlowUp { t: f64, ratio: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
