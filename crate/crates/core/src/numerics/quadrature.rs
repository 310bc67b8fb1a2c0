//! Globally adaptive Gauss-Kronrod (7, 15) quadrature.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate meets `max(abs_tol, rel_tol * |value|)` or the panel budget runs
//! out. Infinite limits are compactified: `t = s / (1 - s^2)` for the whole
//! line, `t = a + s / (1 - s)` for half lines.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default subdivision budget.
pub const MAX_PANELS: usize = 1 << 15;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the odd Kronrod abscissae XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Values the integrator can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub initial_panels: usize,
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * w;
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    let err = (kronrod - gauss).magnitude();
    (kronrod, err)
}

impl Integrator {
    pub fn new(rel_tol: f64) -> Self {
        Integrator {
            rel_tol,
            abs_tol: 0.0,
            max_panels: MAX_PANELS,
            initial_panels: 1,
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }

    pub fn with_initial_panels(mut self, initial_panels: usize) -> Self {
        self.initial_panels = initial_panels.max(1);
        self
    }

    /// Integrates `f` over `[a, b]`; either limit may be infinite.
    pub fn integrate<T, F>(&self, f: F, a: f64, b: f64) -> Result<Estimate<T>>
    where
        T: QuadValue,
        F: Fn(f64) -> T,
    {
        if !(self.rel_tol > 0.0) || self.abs_tol < 0.0 || self.abs_tol.is_nan() {
            return Err(Error::InvalidQuadrature(format!(
                "tolerances must satisfy rel_tol > 0 and abs_tol >= 0 (got {}, {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if a.is_nan() || b.is_nan() {
            return Err(Error::InvalidQuadrature("NaN integration limit".into()));
        }
        if a == b {
            return Ok(Estimate {
                value: T::zero(),
                error: 0.0,
                panels: 0,
            });
        }
        if a > b {
            let est = self.integrate(f, b, a)?;
            return Ok(Estimate {
                value: est.value * -1.0,
                ..est
            });
        }
        match (a.is_finite(), b.is_finite()) {
            (true, true) => self.integrate_finite(&f, a, b),
            (false, false) => self.integrate_finite(
                &|s: f64| {
                    let d = 1.0 - s * s;
                    let t = s / d;
                    let jac = (1.0 + s * s) / (d * d);
                    weighted(f(t), jac)
                },
                -1.0,
                1.0,
            ),
            (true, false) => self.integrate_finite(
                &|s: f64| {
                    let d = 1.0 - s;
                    weighted(f(a + s / d), 1.0 / (d * d))
                },
                0.0,
                1.0,
            ),
            (false, true) => self.integrate_finite(
                &|s: f64| {
                    let d = 1.0 - s;
                    weighted(f(b - s / d), 1.0 / (d * d))
                },
                0.0,
                1.0,
            ),
        }
    }

    fn integrate_finite<T, F>(&self, f: &F, a: f64, b: f64) -> Result<Estimate<T>>
    where
        T: QuadValue,
        F: Fn(f64) -> T,
    {
        let mut heap = BinaryHeap::new();
        let mut frozen: Vec<Panel<T>> = Vec::new();
        let width = (b - a) / self.initial_panels as f64;
        for i in 0..self.initial_panels {
            let lo = a + width * i as f64;
            let hi = if i + 1 == self.initial_panels {
                b
            } else {
                a + width * (i + 1) as f64
            };
            let (value, error) = kronrod(f, lo, hi);
            heap.push(Panel {
                a: lo,
                b: hi,
                value,
                error,
            });
        }
        let mut panels = self.initial_panels;
        let (mut value, mut error) = totals(heap.iter());

        loop {
            let target = self.abs_tol.max(self.rel_tol * value.magnitude());
            if error <= target {
                // Running sums drift; confirm against a fresh total.
                let (v, e) = totals(heap.iter().chain(frozen.iter()));
                value = v;
                error = e;
                if error <= self.abs_tol.max(self.rel_tol * value.magnitude()) {
                    return Ok(Estimate {
                        value,
                        error,
                        panels,
                    });
                }
            }
            let worst = match heap.pop() {
                Some(w) if panels < self.max_panels => w,
                _ => {
                    let (v, e) = totals(heap.iter().chain(frozen.iter()));
                    return Err(Error::NonConvergence {
                        estimate: v.magnitude(),
                        error: e,
                        panels,
                    });
                }
            };
            let mid = 0.5 * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b) {
                // Cannot bisect further in floating point.
                frozen.push(worst);
                continue;
            }
            let (lv, le) = kronrod(f, worst.a, mid);
            let (rv, re) = kronrod(f, mid, worst.b);
            value = value - worst.value + lv + rv;
            error = (error - worst.error + le + re).max(0.0);
            heap.push(Panel {
                a: worst.a,
                b: mid,
                value: lv,
                error: le,
            });
            heap.push(Panel {
                a: mid,
                b: worst.b,
                value: rv,
                error: re,
            });
            panels += 1;
        }
    }
}

fn weighted<T: QuadValue>(v: T, jac: f64) -> T {
    if v.magnitude() == 0.0 || !jac.is_finite() {
        T::zero()
    } else {
        v * jac
    }
}

fn totals<'a, T: QuadValue + 'a>(panels: impl Iterator<Item = &'a Panel<T>>) -> (T, f64) {
    panels.fold((T::zero(), 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// `(value, error_estimate)` of `f` over `[a, b]` at relative tolerance `rel_tol`.
pub fn adaptive_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<(f64, f64)> {
    let est = Integrator::new(rel_tol).integrate(f, a, b)?;
    Ok((est.value, est.error))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_over_half_period() {
        let (v, e) = adaptive_integrate(f64::sin, 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        assert!(e <= 1e-11);
    }

    #[test]
    fn gaussian_over_whole_line() {
        let (v, _) = adaptive_integrate(|t| (-t * t).exp(), f64::NEG_INFINITY, f64::INFINITY, 1e-12).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn half_lines() {
        let (right, _) = adaptive_integrate(|t| (-t).exp(), 1.0, f64::INFINITY, 1e-12).unwrap();
        assert!((right - (-1.0f64).exp()).abs() < 1e-12);
        let (left, _) = adaptive_integrate(|t| t.exp(), f64::NEG_INFINITY, 0.0, 1e-12).unwrap();
        assert!((left - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_and_empty_intervals() {
        let (v, _) = adaptive_integrate(|t| t, 1.0, 0.0, 1e-12).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
        let (z, e) = adaptive_integrate(|t| t, 3.0, 3.0, 1e-12).unwrap();
        assert_eq!((z, e), (0.0, 0.0));
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let err = Integrator::new(1e-14)
            .with_max_panels(4)
            .integrate(|t: f64| (50.0 * t).sin().abs(), 0.0, 10.0)
            .unwrap_err();
        match err {
            Error::NonConvergence { estimate, panels, .. } => {
                assert!(estimate > 0.0);
                assert_eq!(panels, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(adaptive_integrate(f64::sin, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn complex_integrand() {
        // int_0^{2 pi} e^{i t} dt = 0, int_0^{pi} e^{i t} dt = 2i
        let est = Integrator::new(1e-12)
            .with_abs_tol(1e-14)
            .integrate(|t| Complex64::new(0.0, t).exp(), 0.0, PI)
            .unwrap();
        assert!((est.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }
}
