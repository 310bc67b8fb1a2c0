//! The APR signal `g_n(t) = [cos(w0 t/n) + i (w1/w0) sin(w0 t/n)]^n` and the
//! damped family `f_n(t, alpha) = g_n(t) exp(-alpha c (w0 t)^2 / 2n)`,
//! evaluated as (log-modulus, unwrapped phase) pairs so that moduli of order
//! `(w1/w0)^n` stay representable.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest log-modulus for which a linear-domain value is handed out.
pub const LINEAR_LOG_LIMIT: f64 = 700.0;

/// Order, band limit, target frequency and damping knob of the signal family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignalParams {
    n: u32,
    omega0: f64,
    omega1: f64,
    alpha: f64,
}

impl SignalParams {
    pub fn new(n: u32, omega0: f64, omega1: f64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("order n must be positive".into()));
        }
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "band limit omega0 must be finite and positive, got {omega0}"
            )));
        }
        if !omega1.is_finite() || omega1 <= omega0 {
            return Err(Error::InvalidParams(format!(
                "omega1 must exceed omega0 (c > 0), got omega1 = {omega1}, omega0 = {omega0}"
            )));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "damping alpha must be finite and non-negative, got {alpha}"
            )));
        }
        Ok(SignalParams {
            n,
            omega0,
            omega1,
            alpha,
        })
    }

    /// `omega0 = 1`, `omega1 = ratio`.
    pub fn with_ratio(n: u32, ratio: f64, alpha: f64) -> Result<Self> {
        Self::new(n, 1.0, ratio, alpha)
    }

    pub fn with_order(&self, n: u32) -> Result<Self> {
        Self::new(n, self.omega0, self.omega1, self.alpha)
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.n, self.omega0, self.omega1, alpha)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `omega1 / omega0`
    pub fn ratio(&self) -> f64 {
        self.omega1 / self.omega0
    }

    /// `(omega1 / omega0)^2 - 1`
    pub fn c(&self) -> f64 {
        let a = self.ratio();
        a * a - 1.0
    }

    /// Argument of the per-factor oscillation, `w0 t / n`.
    fn theta(&self, t: f64) -> f64 {
        self.omega0 * t / self.n as f64
    }
}

/// A complex value as natural log of its modulus plus a continuous phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogComplex {
    pub log_mag: f64,
    pub phase: f64,
}

impl LogComplex {
    pub fn conj(&self) -> Self {
        LogComplex {
            log_mag: self.log_mag,
            phase: -self.phase,
        }
    }

    pub fn modulus(&self) -> f64 {
        self.log_mag.exp()
    }

    /// Linear value, refused once the modulus nears the f64 range.
    pub fn to_complex(&self) -> Result<Complex64> {
        if self.log_mag >= LINEAR_LOG_LIMIT {
            return Err(Error::Overflow(self.log_mag));
        }
        Ok(Complex64::from_polar(self.log_mag.exp(), self.phase))
    }
}

/// Continuous phase of `g_n`: `n * atan2(a sin r, cos r) + n k pi` with
/// `theta = k pi + r`, `|r| <= pi/2`. Each half period of theta adds `n pi`.
pub fn unwrapped_phase(params: &SignalParams, t: f64) -> f64 {
    let theta = params.theta(t);
    let k = (theta / std::f64::consts::PI).round();
    let r = theta - k * std::f64::consts::PI;
    let branch = (params.ratio() * r.sin()).atan2(r.cos());
    params.n as f64 * (branch + k * std::f64::consts::PI)
}

/// `n ln(1 + c sin^2(w0 t / n))`, the log of `|g_n(t)|^2`.
pub fn log_modulus_sq_g(params: &SignalParams, t: f64) -> f64 {
    let s = params.theta(t).sin();
    params.n as f64 * (params.c() * s * s).ln_1p()
}

/// Exponent of the damping envelope applied to `|g_n|^2`.
fn log_damping_sq(params: &SignalParams, t: f64) -> f64 {
    let x = params.omega0 * t;
    -params.alpha * params.c() * x * x / params.n as f64
}

pub fn eval_g(params: &SignalParams, t: f64) -> LogComplex {
    LogComplex {
        log_mag: 0.5 * log_modulus_sq_g(params, t),
        phase: unwrapped_phase(params, t),
    }
}

pub fn eval_f(params: &SignalParams, t: f64) -> LogComplex {
    let g = eval_g(params, t);
    LogComplex {
        log_mag: g.log_mag + 0.5 * log_damping_sq(params, t),
        phase: g.phase,
    }
}

/// `ln |f_n(t, alpha)|^2`; finite for every finite `t`.
pub fn log_modulus_sq_f(params: &SignalParams, t: f64) -> f64 {
    log_modulus_sq_g(params, t) + log_damping_sq(params, t)
}

/// `(1 + c sin^2(w0 t / n))^n exp(-alpha c (w0 t)^2 / n)`.
pub fn modulus_sq_f(params: &SignalParams, t: f64) -> Result<f64> {
    let log = log_modulus_sq_f(params, t);
    if log >= 2.0 * LINEAR_LOG_LIMIT {
        return Err(Error::Overflow(log));
    }
    Ok(log.exp())
}

/// `d Arg g_n / dt = w1 / (1 + c sin^2(w0 t / n))`; the damping does not touch
/// the phase, so this is also the local frequency of every `f_n(., alpha)`.
pub fn local_frequency(params: &SignalParams, t: f64) -> f64 {
    let s = params.theta(t).sin();
    params.omega1 / (1.0 + params.c() * s * s)
}
