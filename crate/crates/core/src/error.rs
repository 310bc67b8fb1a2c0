use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid signal parameters: {0}")]
    InvalidParams(String),

    #[error("delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),

    #[error("energy is not integrable for alpha = {alpha}: the undamped signal grows without bound")]
    NonIntegrable { alpha: f64 },

    #[error(
        "quadrature did not converge after {panels} panels: estimate {estimate:e}, error estimate {error:e}"
    )]
    NonConvergence {
        estimate: f64,
        error: f64,
        panels: usize,
    },

    #[error("invalid quadrature request: {0}")]
    InvalidQuadrature(String),

    #[error("log-magnitude {0:e} is outside the representable range")]
    LogRangeOverflow(f64),

    #[error("non-finite summation term")]
    NonFiniteTerm,

    #[error("precision policy needs at least 64 mantissa bits, got {0}")]
    InvalidPrecision(usize),

    #[error(
        "precision budget of {provided} bits is below the {required} bits needed to resolve the cancellation"
    )]
    InsufficientPrecision { required: usize, provided: usize },

    #[error("the Gaussian-sum transform is only defined for alpha = 1, got {0}")]
    UnsupportedAlpha(f64),

    #[error("linear-domain value overflows (log-magnitude {0})")]
    Overflow(f64),

    #[error("sample count {0} is not a power of two")]
    SamplesNotPowerOfTwo(usize),

    #[error("time span {t_span} does not cover the signal: edge modulus ratio {tail_ratio:e} exceeds 1e-14")]
    SpanTooShort { t_span: f64, tail_ratio: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("band [{low}, {high}] does not lie within the grid extent [{min}, {max}]")]
    BandOutsideGrid {
        low: f64,
        high: f64,
        min: f64,
        max: f64,
    },
}
