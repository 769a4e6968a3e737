use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse input: {0}")]
    Parse(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("distortion below D-infinity: target {target} <= D_inf {d_infinity}")]
    BelowDInfinity { target: f64, d_infinity: f64 },

    #[error("target distortion numerically indistinguishable from D-infinity (target {target})")]
    IndistinguishableFromDInfinity { target: f64 },

    #[error("quadrature subdivision limit reached: estimate {estimate}, error estimate {error}")]
    QuadratureLimit { estimate: f64, error: f64 },

    #[error("tail integral did not converge (partial value {partial} after {levels} panels)")]
    TailDivergence { partial: f64, levels: usize },

    #[error("{bound}: D = {d} outside validity interval [{lo}, {hi}]")]
    OutOfValidity {
        bound: &'static str,
        d: f64,
        lo: f64,
        hi: f64,
    },

    #[error("series did not reach tolerance within {terms} terms")]
    SeriesCap { terms: usize },

    #[error("iteration did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("alphabet too large for exhaustive search: {0}")]
    AlphabetTooLarge(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Bad or inconsistent input, as opposed to a numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::InvalidGrid(_)
                | Error::InvalidPmf(_)
                | Error::InvalidParameter(_)
                | Error::DimensionMismatch(_)
                | Error::BelowDInfinity { .. }
                | Error::OutOfValidity { .. }
                | Error::AlphabetTooLarge(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
