use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{Method, SpectrumGrid};
use crate::error::{Error, Result};
use crate::signal::{eval_f, SignalParams};

/// Largest edge-to-peak modulus ratio accepted for a sampling window.
pub const TAIL_TOLERANCE: f64 = 1e-14;

/// Raw FFT output mapped onto the continuous transform.
#[derive(Debug, Clone)]
pub struct DiscreteSpectrum {
    /// Angular frequencies (rad/s) of each bin, increasing.
    pub omegas: Vec<f64>,
    pub values: Vec<Complex64>,
    /// `max(|x_first|, |x_last|) / max |x|`.
    pub tail_ratio: f64,
}

/// `2 * 10 n^{3/4} / w0`.
pub fn default_t_span(params: &SignalParams) -> f64 {
    20.0 * (params.n() as f64).powf(0.75) / params.omega0()
}

/// Smallest power of two giving a sample spacing of at most `0.05 / w1`.
pub fn default_samples(params: &SignalParams, t_span: f64) -> usize {
    ((t_span * params.omega1() / 0.05).ceil() as usize).next_power_of_two()
}

/// Samples `signal` on `[-t_span/2, t_span/2)` at `samples` points and returns
/// `(dt / 2pi) sum_j x(t_j) exp(-i w t_j)` at `w = offset + 2pi k / t_span`,
/// `k = 0..samples` when `offset != 0`, or the centred bins `k = -N/2..N/2`
/// when `offset == 0`.
pub fn discrete_transform<F>(signal: F, t_span: f64, samples: usize, offset: f64) -> Result<DiscreteSpectrum>
where
    F: Fn(f64) -> Complex64,
{
    if samples < 2 || !samples.is_power_of_two() {
        return Err(Error::SamplesNotPowerOfTwo(samples));
    }
    if !(t_span.is_finite() && t_span > 0.0) {
        return Err(Error::InvalidGrid(format!("time span must be positive, got {t_span}")));
    }
    let dt = t_span / samples as f64;
    let t0 = -0.5 * t_span;
    let mut buffer: Vec<Complex64> = (0..samples)
        .map(|j| {
            let t = t0 + dt * j as f64;
            signal(t) * Complex64::from_polar(1.0, -offset * t)
        })
        .collect();

    let peak = buffer.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let edge = buffer[0].norm().max(buffer[samples - 1].norm());
    let tail_ratio = if peak > 0.0 { edge / peak } else { 0.0 };
    if !(tail_ratio < TAIL_TOLERANCE) {
        return Err(Error::SpanTooShort { t_span, tail_ratio });
    }

    FftPlanner::new().plan_fft_forward(samples).process(&mut buffer);

    let scale = dt / (2.0 * PI);
    let bin_width = 2.0 * PI / t_span;
    // exp(-i (2 pi k / T) t0) = (-1)^k
    let bin = |k: usize| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        buffer[k] * (scale * sign)
    };
    let (omegas, values) = if offset == 0.0 {
        let half = samples / 2;
        (half..samples)
            .map(|k| (bin_width * (k as f64 - samples as f64), bin(k)))
            .chain((0..half).map(|k| (bin_width * k as f64, bin(k))))
            .unzip()
    } else {
        (0..samples).map(|k| (offset + bin_width * k as f64, bin(k))).unzip()
    };
    Ok(DiscreteSpectrum {
        omegas,
        values,
        tail_ratio,
    })
}

fn sampler(params: &SignalParams) -> Result<impl Fn(f64) -> Complex64 + '_> {
    if !(params.alpha() > 0.0) {
        return Err(Error::NonIntegrable {
            alpha: params.alpha(),
        });
    }
    Ok(move |t: f64| {
        let z = eval_f(params, t);
        Complex64::from_polar(z.log_mag.exp(), z.phase)
    })
}

/// FFT spectrum of `f_n` over the centred bins; grid spacing is `2pi / t_span`.
pub fn ft_discrete(params: &SignalParams, t_span: f64, samples: usize) -> Result<SpectrumGrid> {
    let spec = discrete_transform(sampler(params)?, t_span, samples, 0.0)?;
    let w0 = params.omega0();
    SpectrumGrid::new(
        spec.omegas.iter().map(|w| w / w0).collect(),
        spec.values.iter().map(|z| z.re).collect(),
        Method::Discrete,
    )
}

/// FFT spectrum sampled exactly on an evenly spaced grid (units of `w0`).
///
/// The window is stretched to an integer multiple of `2pi / dw` and the signal
/// is demodulated by the first grid frequency, so that every grid point is an
/// FFT bin.
pub fn ft_discrete_on_grid(params: &SignalParams, omegas: &[f64]) -> Result<SpectrumGrid> {
    if omegas.len() < 2 {
        return Err(Error::InvalidGrid("the discrete route needs at least two grid points".into()));
    }
    let count = omegas.len();
    let w0 = params.omega0();
    let first = omegas[0];
    let step = (omegas[count - 1] - first) / (count - 1) as f64;
    if !(step > 0.0) {
        return Err(Error::InvalidGrid("grid must be strictly increasing".into()));
    }
    let uniform = omegas
        .iter()
        .enumerate()
        .all(|(i, w)| (w - (first + step * i as f64)).abs() <= 1e-9 * step.max(1.0));
    if !uniform {
        return Err(Error::InvalidGrid("the discrete route needs an evenly spaced grid".into()));
    }

    let step_rad = step * w0;
    let stride = (default_t_span(params) * step_rad / (2.0 * PI)).ceil().max(1.0) as usize;
    let t_span = stride as f64 * 2.0 * PI / step_rad;
    let reach = omegas.iter().fold(0.0f64, |m, w| m.max(w.abs())) * w0 + 10.0 * params.omega1();
    let dt_max = (0.05 / params.omega1()).min(PI / (2.0 * reach));
    let mut samples = ((t_span / dt_max).ceil() as usize).next_power_of_two();
    while samples <= (count - 1) * stride {
        samples *= 2;
    }
    let spec = discrete_transform(sampler(params)?, t_span, samples, first * w0)?;
    let values = (0..count).map(|i| spec.values[i * stride].re).collect();
    SpectrumGrid::new(omegas.to_vec(), values, Method::Discrete)
}
