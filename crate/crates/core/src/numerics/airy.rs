//! Airy function of the first kind on the real line.
//!
//! Moderate arguments use the Maclaurin series `Ai(x) = c1 f(x) - c2 g(x)`
//! summed in double-double arithmetic, since the series terms grow to roughly
//! `exp(2/3 |x|^{3/2})` before they start to decay. Large arguments use the
//! standard asymptotic expansions with optimal truncation:
//!
//! ```text
//! x -> +inf:  Ai(x)  ~ exp(-z) / (2 sqrt(pi) x^{1/4}) * sum (-1)^k u_k z^-k
//! x -> -inf:  Ai(-y) ~ [sin(z + pi/4) P(z) - cos(z + pi/4) Q(z)] / (sqrt(pi) y^{1/4})
//! ```
//!
//! with `z = 2/3 |x|^{3/2}`.

use std::f64::consts::{FRAC_PI_4, PI};

use super::double_double::DoubleDouble;

/// Ai(0) = 3^{-2/3} / Gamma(2/3)
const AI0: DoubleDouble = DoubleDouble::new(0.3550280538878172, 2.05233632436212e-17);
/// -Ai'(0) = 3^{-1/3} / Gamma(1/3)
const AIP0: DoubleDouble = DoubleDouble::new(0.2588194037928068, -2.522243111610832e-17);

/// Above this the decaying asymptotic expansion is used. Its optimally
/// truncated relative error is about `exp(-2z)`, still ~1e-10 at 6; the
/// double-double series loses only `exp(2z) * 2^-106` and holds out past 9.
pub const POSITIVE_CROSSOVER: f64 = 9.0;
/// Below this the oscillatory asymptotic expansion is used. At -6 its optimally
/// truncated error is still ~3e-11, so the series is kept down to -8.
pub const NEGATIVE_CROSSOVER: f64 = -8.0;

const MAX_SERIES_TERMS: usize = 400;

pub fn airy_ai(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= POSITIVE_CROSSOVER {
        asymptotic_positive(x)
    } else if x <= NEGATIVE_CROSSOVER {
        asymptotic_negative(x)
    } else {
        maclaurin(x)
    }
}

fn maclaurin(x: f64) -> f64 {
    let xd = DoubleDouble::from_f64(x);
    let x3 = xd * xd * xd;

    // f = sum_k x^{3k} prod (3j-2) / (3k)!,  g = sum_k x^{3k+1} prod (3j-1) / (3k+1)!
    let mut f_term = DoubleDouble::from_f64(1.0);
    let mut f_sum = f_term;
    let mut g_term = xd;
    let mut g_sum = g_term;
    for k in 1..MAX_SERIES_TERMS {
        let k3 = 3.0 * k as f64;
        f_term = (f_term * x3).div_f64((k3 - 1.0) * k3);
        g_term = (g_term * x3).div_f64(k3 * (k3 + 1.0));
        f_sum = f_sum + f_term;
        g_sum = g_sum + g_term;
        let scale = f_sum.abs().hi.max(g_sum.abs().hi).max(1.0);
        if k > 2 && f_term.abs().hi.max(g_term.abs().hi) < 1e-34 * scale {
            break;
        }
    }
    (AI0 * f_sum - AIP0 * g_sum).to_f64()
}

/// u_k = (6k-5)(6k-3)(6k-1) / (216 k (2k-1)) u_{k-1}, u_0 = 1.
fn u_coefficient_ratio(k: usize) -> f64 {
    let k = k as f64;
    (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0))
}

fn asymptotic_positive(x: f64) -> f64 {
    let z = 2.0 / 3.0 * x * x.sqrt();
    if z > 745.0 {
        return 0.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let next = -term * u_coefficient_ratio(k) / z;
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    (-z).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * sum
}

fn asymptotic_negative(x: f64) -> f64 {
    let y = -x;
    let z = 2.0 / 3.0 * y * y.sqrt();
    // terms t_k = u_k z^-k; even k feed P, odd k feed Q, with alternating signs
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        let next = term * u_coefficient_ratio(k) / z;
        if next >= term {
            break;
        }
        term = next;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if term < 1e-18 {
            break;
        }
    }
    let phase = z + FRAC_PI_4;
    (phase.sin() * p - phase.cos() * q) / (PI.sqrt() * y.powf(0.25))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        assert!((airy_ai(0.0) - 0.3550280538878172).abs() < 1e-16);
    }

    #[test]
    fn branches_agree_at_crossovers() {
        for &x in &[POSITIVE_CROSSOVER, NEGATIVE_CROSSOVER] {
            let series = maclaurin(x);
            // on the oscillatory side errors are measured against the envelope |x|^{-1/4} / sqrt(pi)
            let (asym, scale) = if x > 0.0 {
                (asymptotic_positive(x), series.abs())
            } else {
                (asymptotic_negative(x), 1.0 / (PI.sqrt() * (-x).powf(0.25)))
            };
            assert!((series - asym).abs() < 1e-14 * scale, "x={x}: {series} vs {asym}");
        }
    }

    #[test]
    fn nan_propagates() {
        assert!(airy_ai(f64::NAN).is_nan());
    }

    #[test]
    fn far_tails() {
        assert_eq!(airy_ai(200.0), 0.0);
        let v = airy_ai(-1.0e4);
        assert!(v.abs() < 0.6 / 1.0e4f64.powf(0.25));
    }
}
