use std::f64::consts::PI;

use serde::Serialize;

use super::SpectrumGrid;
use crate::error::{Error, Result};
use crate::numerics::{airy_ai, signed_cbrt};
use crate::signal::SignalParams;

/// Where the cube root sits in the Airy argument, with `K = n^2 / (c a)` and
/// `x = (w - w1) / w0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AiryArgument {
    /// `K^{1/3} x`, the stationary-phase scaling. Default.
    ScaledOffset,
    /// `cbrt(K x)`, the root taken over the whole product.
    WholeProductCubeRoot,
}

/// Approximate transform near `w1` (rad/s):
/// `2pi K^{1/3} / w0 * Ai(arg) * exp(-(w/w1 - 1)^2 (c + 2/3) n / (4c))`.
///
/// The `2pi` prefactor does not match the `1/(2pi)` convention of the other
/// routes; compare through [`fit_scale`].
pub fn ft_airy(params: &SignalParams, omega: f64) -> f64 {
    ft_airy_with(params, omega, AiryArgument::ScaledOffset)
}

pub fn ft_airy_with(params: &SignalParams, omega: f64, argument: AiryArgument) -> f64 {
    let n = params.n() as f64;
    let a = params.ratio();
    let c = params.c();
    let k = n * n / (c * a);
    let x = (omega - params.omega1()) / params.omega0();
    let arg = match argument {
        AiryArgument::ScaledOffset => signed_cbrt(k) * x,
        AiryArgument::WholeProductCubeRoot => signed_cbrt(k * x),
    };
    let detune = omega / params.omega1() - 1.0;
    let envelope = (-detune * detune * (c + 2.0 / 3.0) / (4.0 * c) * n).exp();
    2.0 * PI * signed_cbrt(k) / params.omega0() * airy_ai(arg) * envelope
}

/// Scale expected to carry the `2pi` prefactor into the `1/(2pi)` convention.
pub fn airy_scale_factor() -> f64 {
    1.0 / (2.0 * PI)
}

/// Least-squares scale `s` minimising `|reference - s * model|^2` over the
/// shared abscissae.
pub fn fit_scale(reference: &SpectrumGrid, model: &SpectrumGrid) -> Result<f64> {
    if reference.omegas() != model.omegas() {
        return Err(Error::InvalidGrid("fit_scale needs identical abscissae".into()));
    }
    let (rm, mm) = reference
        .values()
        .iter()
        .zip(model.values())
        .fold((0.0, 0.0), |(rm, mm), (r, m)| (rm + r * m, mm + m * m));
    if mm == 0.0 {
        return Err(Error::InvalidGrid("model vanishes on the grid".into()));
    }
    Ok(rm / mm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::Method;

    const AI0: f64 = 0.355_028_053_887_817_2;

    #[test]
    fn value_at_target_frequency() {
        let params = SignalParams::with_ratio(1024, 2.0, 1.0).unwrap();
        let k: f64 = 1024.0 * 1024.0 / 6.0;
        for argument in [AiryArgument::ScaledOffset, AiryArgument::WholeProductCubeRoot] {
            let v = ft_airy_with(&params, 2.0, argument);
            assert!((v / (2.0 * PI * k.cbrt() * AI0) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn decays_above_target() {
        let params = SignalParams::with_ratio(128, 2.0, 1.0).unwrap();
        assert!(ft_airy(&params, 4.0).abs() < 1e-50);
        assert!(ft_airy_with(&params, 4.0, AiryArgument::WholeProductCubeRoot).abs() < 1e-30);
    }

    #[test]
    fn fit_recovers_known_scale() {
        let omegas = vec![0.0, 1.0, 2.0, 3.0];
        let model = SpectrumGrid::new(omegas.clone(), vec![1.0, -2.0, 0.5, 4.0], Method::Airy).unwrap();
        let reference =
            SpectrumGrid::new(omegas, model.values().iter().map(|v| 0.25 * v).collect(), Method::Quadrature)
                .unwrap();
        assert!((fit_scale(&reference, &model).unwrap() - 0.25).abs() < 1e-15);
        let other = SpectrumGrid::new(vec![0.0, 1.0], vec![1.0, 1.0], Method::Airy).unwrap();
        assert!(fit_scale(&reference, &other).is_err());
    }
}
