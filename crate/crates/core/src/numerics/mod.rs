//! Numerical kernels: extended-precision reals, sign-tracked log-domain
//! summation, the Airy function, and adaptive quadrature.

mod airy;
mod double_double;
pub mod extended;
mod logsum;
pub mod quadrature;

pub use airy::{airy_ai, NEGATIVE_CROSSOVER, POSITIVE_CROSSOVER};
pub use double_double::DoubleDouble;
pub use extended::{ExtContext, ExtReal};
pub use logsum::{signed_log_sum, PrecisionPolicy, SignedLogReal, MAX_LOG_ABS};
pub use quadrature::{adaptive_integrate, Estimate, Integrator, QuadValue};

/// Real cube root that keeps the sign of `x`.
pub fn signed_cbrt(x: f64) -> f64 {
    x.cbrt()
}
