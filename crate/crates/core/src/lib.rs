//! Damped APR superoscillations: the signal family, its accuracy window and
//! energy yield, and its Fourier spectrum computed by independent routes.
//!
//! Times are in seconds and frequencies in rad/s unless a function says
//! otherwise; spectrum grids carry frequencies in units of `omega0`.

pub mod analysis;
pub mod error;
pub mod numerics;
pub mod signal;
pub mod spectrum;

pub use error::{Error, Result};
pub use numerics::PrecisionPolicy;
pub use signal::{LogComplex, SignalParams};
pub use spectrum::{compute_spectrum, Method, SpectrumGrid, SpectrumOptions};
