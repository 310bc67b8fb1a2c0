use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::decay_window;
use crate::error::{Error, Result};
use crate::numerics::Integrator;
use crate::signal::{eval_f, SignalParams};

pub const DEFAULT_FT_REL_TOL: f64 = 1e-10;

/// `|f| < exp(-45)` beyond the support half-width.
const SUPPORT_LOG_FLOOR: f64 = -45.0;
const SUPPORT_SCAN_POINTS: usize = 8192;

/// One transform value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierSample {
    /// Real part, the transform proper.
    pub value: f64,
    /// Imaginary part; zero up to quadrature error for a conjugate-symmetric signal.
    pub imag: f64,
    pub error_estimate: f64,
}

/// Quadrature of `(1/2pi) int f(t) exp(-i w t) dt`, with the support and
/// absolute error floor worked out once per parameter set.
#[derive(Debug, Clone)]
pub struct QuadratureTransform {
    params: SignalParams,
    rel_tol: f64,
    support: f64,
    l1_norm: f64,
}

impl QuadratureTransform {
    pub fn new(params: &SignalParams, rel_tol: f64) -> Result<Self> {
        if !(params.alpha() > 0.0) {
            return Err(Error::NonIntegrable {
                alpha: params.alpha(),
            });
        }
        if !(rel_tol > 0.0) {
            return Err(Error::InvalidQuadrature(format!("rel_tol must be positive, got {rel_tol}")));
        }
        let support = support_half_width(params);
        let modulus = |t: f64| eval_f(params, t).log_mag.exp();
        let integrator = Integrator::new(1e-8).with_initial_panels(64);
        let core = integrator.integrate(modulus, -support, support)?.value;
        let tails = integrator.integrate(modulus, support, f64::INFINITY)?.value;
        Ok(QuadratureTransform {
            params: *params,
            rel_tol,
            support,
            l1_norm: core + 2.0 * tails,
        })
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    /// `int |f| dt`; `l1_norm / 2pi` bounds `|F|` everywhere.
    pub fn l1_norm(&self) -> f64 {
        self.l1_norm
    }

    /// Absolute error floor: `rel_tol * l1_norm / 2pi`.
    pub fn abs_tol(&self) -> f64 {
        self.rel_tol * self.l1_norm / (2.0 * PI)
    }

    pub fn eval(&self, omega: f64) -> Result<FourierSample> {
        let params = &self.params;
        let integrand = |t: f64| {
            let z = eval_f(params, t);
            Complex64::from_polar(z.log_mag.exp(), z.phase - omega * t) / (2.0 * PI)
        };
        let half_periods = 2.0 * self.support * (params.omega1() + omega.abs()) / PI;
        let panels = (half_periods.ceil() as usize).clamp(8, 8192);
        let floor = self.abs_tol();
        let core = Integrator::new(self.rel_tol)
            .with_abs_tol(0.5 * floor)
            .with_initial_panels(panels)
            .integrate(integrand, -self.support, self.support)?;
        let tail = Integrator::new(self.rel_tol).with_abs_tol(0.25 * floor);
        let right = tail.integrate(integrand, self.support, f64::INFINITY)?;
        let left = tail.integrate(integrand, f64::NEG_INFINITY, -self.support)?;
        let total = core.value + right.value + left.value;
        Ok(FourierSample {
            value: total.re,
            imag: total.im,
            error_estimate: core.error + right.error + left.error,
        })
    }
}

/// Smallest scanned `t` beyond which `log |f| < SUPPORT_LOG_FLOOR` on the scan grid.
fn support_half_width(params: &SignalParams) -> f64 {
    let w = decay_window(params);
    let h = w / SUPPORT_SCAN_POINTS as f64;
    let last = (0..=SUPPORT_SCAN_POINTS)
        .rev()
        .find(|&i| eval_f(params, i as f64 * h).log_mag >= SUPPORT_LOG_FLOOR)
        .unwrap_or(0);
    (last as f64 + 2.0) * h
}

/// Real part of `(1/2pi) int f(t) exp(-i w t) dt` at `omega` (rad/s).
pub fn ft_quadrature(params: &SignalParams, omega: f64, rel_tol: f64) -> Result<f64> {
    Ok(QuadratureTransform::new(params, rel_tol)?.eval(omega)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normalized_gaussian(n: f64, c: f64, eta: f64) -> f64 {
        (n / (2.0 * PI * c)).sqrt() * (-n * eta * eta / (2.0 * c)).exp()
    }

    #[test]
    fn first_order_matches_two_gaussians() {
        // n = 1: f = (3/2) e^{it} e^{-3t^2/2} - (1/2) e^{-it} e^{-3t^2/2}
        let params = SignalParams::with_ratio(1, 2.0, 1.0).unwrap();
        let plan = QuadratureTransform::new(&params, 1e-12).unwrap();
        for &w in &[-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0] {
            let expected = 0.5 * (3.0 * normalized_gaussian(1.0, 3.0, 1.0 - w)
                - normalized_gaussian(1.0, 3.0, -1.0 - w));
            let got = plan.eval(w).unwrap();
            assert!((got.value - expected).abs() < 1e-8, "w={w}: {} vs {expected}", got.value);
            assert!(got.imag.abs() < 1e-10);
        }
    }

    #[test]
    fn undamped_signal_is_rejected() {
        let params = SignalParams::with_ratio(4, 2.0, 0.0).unwrap();
        assert!(matches!(
            QuadratureTransform::new(&params, 1e-8),
            Err(Error::NonIntegrable { .. })
        ));
    }

    #[test]
    fn support_covers_the_envelope() {
        let params = SignalParams::with_ratio(128, 2.0, 1.0).unwrap();
        let plan = QuadratureTransform::new(&params, 1e-8).unwrap();
        assert!(eval_f(&params, plan.support()).log_mag < SUPPORT_LOG_FLOOR);
        assert!(eval_f(&params, 0.5 * plan.support()).log_mag > SUPPORT_LOG_FLOOR);
    }
}
