//! Fourier spectrum of `f_n` by independent routes.
//!
//! All routes share the convention `F(w) = (1/2pi) int f(t) exp(-i w t) dt`,
//! which makes `F` real (from `f(-t) = conj f(t)`) and puts its peak near `+w1`.
//!
//! * [`ft_quadrature`]: adaptive quadrature of the defining integral.
//! * [`ft_discrete`]: FFT of the sampled signal, rescaled to the continuous transform.
//! * [`ft_gaussian_sum`]: binomial expansion of `g_n` into `n + 1` exponentials,
//!   each turned into a Gaussian by the damping factor, summed with
//!   extended-precision cancellation tracking.
//! * [`ft_airy`]: cubic-phase (Airy) approximation near `w1`.

mod airy;
mod discrete;
mod gaussian_sum;
mod metrics;
mod quadrature;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::PrecisionPolicy;
use crate::signal::SignalParams;

pub use airy::{airy_scale_factor, fit_scale, ft_airy, ft_airy_with, AiryArgument};
pub use discrete::{
    default_samples, default_t_span, discrete_transform, ft_discrete, ft_discrete_on_grid,
    DiscreteSpectrum,
};
pub use gaussian_sum::{ft_gaussian_sum, GaussianSumPlan};
pub use metrics::{
    band_energy_fraction, first_extremum_below_peak, fwhm, peak_location, sign_changes, spectral_energy,
};
pub use quadrature::{ft_quadrature, FourierSample, QuadratureTransform, DEFAULT_FT_REL_TOL};

/// Transform convention shared by every grid.
pub const CONVENTION: &str = "forward, 1/(2π) normalization";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    Discrete,
    GaussianSum,
    Airy,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Quadrature,
        Method::Discrete,
        Method::GaussianSum,
        Method::Airy,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Discrete => "discrete",
            Method::GaussianSum => "gaussian_sum",
            Method::Airy => "airy",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidGrid(format!("unknown spectrum method '{s}'")))
    }
}

/// Spectrum samples on a frequency grid. `omegas` are in units of `omega0`;
/// `values` are `F(omega0 * omegas[i])`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumGrid {
    omegas: Vec<f64>,
    values: Vec<f64>,
    method: Method,
    convention: &'static str,
}

impl SpectrumGrid {
    pub fn new(omegas: Vec<f64>, values: Vec<f64>, method: Method) -> Result<Self> {
        if omegas.is_empty() {
            return Err(Error::InvalidGrid("empty grid".into()));
        }
        if omegas.len() != values.len() {
            return Err(Error::InvalidGrid(format!(
                "{} abscissae but {} values",
                omegas.len(),
                values.len()
            )));
        }
        if omegas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid("abscissae must be strictly increasing".into()));
        }
        if omegas.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("non-finite grid entry".into()));
        }
        Ok(SpectrumGrid {
            omegas,
            values,
            method,
            convention: CONVENTION,
        })
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn convention(&self) -> &'static str {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Restriction to `low <= omega <= high`.
    pub fn window(&self, low: f64, high: f64) -> Result<Self> {
        let (omegas, values): (Vec<f64>, Vec<f64>) = self
            .omegas
            .iter()
            .zip(&self.values)
            .filter(|(w, _)| **w >= low && **w <= high)
            .map(|(w, v)| (*w, *v))
            .unzip();
        SpectrumGrid::new(omegas, values, self.method)
    }
}

/// `count` evenly spaced points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 || !(min < max) || !min.is_finite() || !max.is_finite() {
        return Err(Error::InvalidGrid(format!(
            "need count >= 2 and min < max, got [{min}, {max}] x {count}"
        )));
    }
    let step = (max - min) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { max } else { min + step * i as f64 })
        .collect())
}

/// Knobs for [`compute_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumOptions {
    pub rel_tol: f64,
    /// Overrides the cancellation-derived budget for the Gaussian sum.
    pub precision: Option<PrecisionPolicy>,
    pub airy_argument: AiryArgument,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            rel_tol: DEFAULT_FT_REL_TOL,
            precision: None,
            airy_argument: AiryArgument::ScaledOffset,
        }
    }
}

impl SpectrumOptions {
    pub fn policy_for(&self, params: &SignalParams) -> PrecisionPolicy {
        self.precision
            .unwrap_or_else(|| PrecisionPolicy::for_cancellation(params.n(), params.ratio()))
    }
}

/// Evaluates one method on `omegas` (units of `omega0`). The discrete route
/// needs an evenly spaced grid.
pub fn compute_spectrum(
    params: &SignalParams,
    omegas: &[f64],
    method: Method,
    options: &SpectrumOptions,
) -> Result<SpectrumGrid> {
    let w0 = params.omega0();
    let values: Vec<f64> = match method {
        Method::Quadrature => {
            let plan = QuadratureTransform::new(params, options.rel_tol)?;
            omegas
                .par_iter()
                .map(|w| plan.eval(w * w0).map(|s| s.value))
                .collect::<Result<_>>()?
        }
        Method::Discrete => return ft_discrete_on_grid(params, omegas),
        Method::GaussianSum => {
            let plan = GaussianSumPlan::new(params, options.policy_for(params))?;
            omegas
                .par_iter()
                .map(|w| plan.eval(w * w0))
                .collect::<Result<_>>()?
        }
        Method::Airy => omegas
            .iter()
            .map(|w| ft_airy_with(params, w * w0, options.airy_argument))
            .collect(),
    };
    SpectrumGrid::new(omegas.to_vec(), values, method)
}
