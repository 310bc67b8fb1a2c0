use num_complex::Complex64;
use std::f64::consts::PI;
use superosc::numerics::{adaptive_integrate, Integrator};

/// Composite Simpson rule on `intervals` (even) subintervals.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let inner: f64 = (1..intervals)
        .map(|i| f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

#[test]
fn fifty_oscillations_against_dense_simpson() {
    let f = |x: f64| (2.0 * PI * 50.0 * x).sin() * (-x * x).exp() * (1.0 + x);
    let oracle = simpson(f, 0.0, 1.0, 1_000_000);
    let (value, error) = adaptive_integrate(f, 0.0, 1.0, 1e-10).unwrap();
    assert!((value - oracle).abs() < 1e-8, "{value} vs {oracle}");
    assert!(error < 1e-8);
}

#[test]
fn damped_cosine_closed_form() {
    // int_0^1 cos(w x) e^{-x} dx = Re[(e^{iw - 1} - 1) / (iw - 1)]
    let w = 100.0 * PI;
    let z = Complex64::new(-1.0, w);
    let expected = ((z.exp() - 1.0) / z).re;
    // the value is ~1e-6 after cancellation, so ask for an absolute floor
    let est = Integrator::new(1e-12)
        .with_abs_tol(1e-14)
        .integrate(|x: f64| (w * x).cos() * (-x).exp(), 0.0, 1.0)
        .unwrap();
    assert!((est.value - expected).abs() < 1e-14, "{} vs {expected}", est.value);
}

#[test]
fn gaussian_fourier_pair_on_the_whole_line() {
    for w in [0.0, 1.0, 3.5, 8.0] {
        let est = Integrator::new(1e-12)
            .with_abs_tol(1e-15)
            .integrate(
                |t: f64| Complex64::from_polar((-t * t).exp(), -w * t),
                f64::NEG_INFINITY,
                f64::INFINITY,
            )
            .unwrap();
        let expected = PI.sqrt() * (-w * w / 4.0).exp();
        assert!((est.value.re - expected).abs() < 1e-12, "w = {w}");
        assert!(est.value.im.abs() < 1e-13);
    }
}

#[test]
fn endpoint_singularity_converges() {
    // int_0^1 x^{-1/2} = 2
    let (value, _) = adaptive_integrate(|x: f64| if x > 0.0 { x.powf(-0.5) } else { 0.0 }, 0.0, 1.0, 1e-10).unwrap();
    assert!((value - 2.0).abs() < 1e-8);
}
