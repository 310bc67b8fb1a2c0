//! Accuracy ranges, energies and the delta-dependent yield.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Integrator;
use crate::signal::{log_modulus_sq_f, local_frequency, SignalParams};

/// Relative tolerance for energy quadratures.
pub const ENERGY_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YieldReport {
    pub n: u32,
    pub ratio: f64,
    pub alpha: f64,
    pub delta: f64,
    /// Half-width of the accuracy window, seconds.
    pub t_range: f64,
    /// Same half-width in units of `1/omega0`.
    pub omega0_t_range: f64,
    pub useful_energy: f64,
    pub total_energy: f64,
    pub yield_value: f64,
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidDelta(delta))
    }
}

/// `c^2/2 + c/3`, the quartic coefficient of `1 - |f_n|^2` at small times.
pub fn short_time_coefficient(params: &SignalParams) -> f64 {
    let c = params.c();
    c * c / 2.0 + c / 3.0
}

/// Half-width where `|g_n|^2 - 1 <= delta`: `w0 t = sqrt(delta n / c)`.
pub fn range_g(params: &SignalParams, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok((delta * params.n() as f64 / params.c()).sqrt() / params.omega0())
}

/// Half-width where `1 - |f_n|^2 <= delta` for the alpha = 1 member:
/// `w0 t = (delta n^3 / (c^2/2 + c/3))^{1/4}`.
pub fn range_f(params: &SignalParams, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let n = params.n() as f64;
    Ok((delta * n * n * n / short_time_coefficient(params)).powf(0.25) / params.omega0())
}

/// Local frequency at [`range_g`] to first order: `w1 (1 - delta / n)`.
pub fn local_frequency_at_range_g(params: &SignalParams, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(params.omega1() * (1.0 - delta / params.n() as f64))
}

/// Local frequency at [`range_f`] to leading order:
/// `w1 (1 - sqrt(c delta / ((c/2 + 1/3) n)))`.
///
/// Follows from `w1 / (1 + c sin^2 theta)` with `theta^2 = sqrt(delta / (n c (c/2 + 1/3)))`.
pub fn local_frequency_at_range(params: &SignalParams, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let c = params.c();
    let n = params.n() as f64;
    Ok(params.omega1() * (1.0 - (c * delta / ((c / 2.0 + 1.0 / 3.0) * n)).sqrt()))
}

/// Exact local frequency at the edge of the accuracy window, for cross-checks.
pub fn local_frequency_at_range_exact(params: &SignalParams, delta: f64) -> Result<f64> {
    Ok(local_frequency(params, range_f(params, delta)?))
}

/// Window beyond which `|f_n|^2` is negligible:
/// `10 max(sqrt(n ln(1+c) / (alpha c)), (n^3 / (c^2/2 + c/3))^{1/4}) / w0`.
pub fn decay_window(params: &SignalParams) -> f64 {
    let n = params.n() as f64;
    let c = params.c();
    let gaussian = (n * c.ln_1p() / (params.alpha() * c)).sqrt();
    let quartic = (n * n * n / short_time_coefficient(params)).powf(0.25);
    10.0 * gaussian.max(quartic) / params.omega0()
}

fn require_damping(params: &SignalParams) -> Result<()> {
    if params.alpha() > 0.0 {
        Ok(())
    } else {
        Err(Error::NonIntegrable {
            alpha: params.alpha(),
        })
    }
}

fn energy_integrator(params: &SignalParams, a: f64, b: f64) -> Integrator {
    // roughly one panel per oscillation of sin^2(w0 t / n) keeps early estimates honest
    let span = if a.is_finite() && b.is_finite() { b - a } else { 0.0 };
    let panels = (span * params.omega0() / params.n() as f64).ceil() as usize;
    Integrator::new(ENERGY_REL_TOL).with_initial_panels(panels.clamp(16, 4096))
}

/// `int_a^b |f_n(t)|^2 dt`; limits may be infinite.
pub fn energy_between(params: &SignalParams, a: f64, b: f64) -> Result<f64> {
    require_damping(params)?;
    let integrand = |t: f64| log_modulus_sq_f(params, t).exp();
    let est = energy_integrator(params, a, b).integrate(integrand, a, b)?;
    Ok(est.value)
}

/// Total energy `int |f_n|^2 dt` over the whole line: the decay window plus
/// compactified tails.
pub fn total_energy(params: &SignalParams) -> Result<f64> {
    require_damping(params)?;
    let w = decay_window(params);
    let core = energy_between(params, -w, w)?;
    let right = energy_between(params, w, f64::INFINITY)?;
    let left = energy_between(params, f64::NEG_INFINITY, -w)?;
    Ok(left + core + right)
}

/// Energy inside `[-t_f, t_f]` computed as total minus both tails.
pub fn useful_energy_by_complement(params: &SignalParams, delta: f64) -> Result<f64> {
    let tf = range_f(params, delta)?;
    let total = total_energy(params)?;
    let w = decay_window(params).max(tf);
    let tail = energy_between(params, tf, w)? + energy_between(params, w, f64::INFINITY)?;
    Ok(total - 2.0 * tail)
}

/// Fraction of the total energy inside the delta-accuracy window `[-t_f, t_f]`.
pub fn yield_delta(params: &SignalParams, delta: f64) -> Result<YieldReport> {
    require_damping(params)?;
    let tf = range_f(params, delta)?;
    let useful = energy_between(params, -tf, tf)?;
    let total = total_energy(params)?;
    Ok(YieldReport {
        n: params.n(),
        ratio: params.ratio(),
        alpha: params.alpha(),
        delta,
        t_range: tf,
        omega0_t_range: tf * params.omega0(),
        useful_energy: useful,
        total_energy: total,
        yield_value: (useful / total).min(1.0),
    })
}
