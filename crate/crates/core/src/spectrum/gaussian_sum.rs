use crate::error::{Error, Result};
use crate::numerics::{signed_log_sum, ExtContext, ExtReal, PrecisionPolicy, SignedLogReal};
use crate::signal::SignalParams;

/// Transform of the critically damped member as a superposition of `n + 1`
/// Gaussians centred at `w_m = (2m - n) w0 / n`:
///
/// `F(w) = 2^-n sum_m C(n,m) (1+a)^m (1-a)^(n-m) G(w_m - w)`,
/// `G(eta) = sqrt(n / (2pi c w0^2)) exp(-n eta^2 / (2 c w0^2))`.
///
/// The coefficients alternate in sign and grow like `a^n`, so the sum is done
/// in the log domain at a mantissa budget that covers the cancellation.
pub struct GaussianSumPlan {
    params: SignalParams,
    policy: PrecisionPolicy,
    /// `ln |coef_m| + ln(sqrt(n / (2pi c)) / w0)`, one per `m`.
    log_weights: Vec<ExtReal>,
    /// `n / (2c)`
    kappa: ExtReal,
}

impl GaussianSumPlan {
    pub fn new(params: &SignalParams, policy: PrecisionPolicy) -> Result<Self> {
        if params.alpha() != 1.0 {
            return Err(Error::UnsupportedAlpha(params.alpha()));
        }
        let required = PrecisionPolicy::required_bits(params.n(), params.ratio());
        if policy.mantissa_bits() < required {
            return Err(Error::InsufficientPrecision {
                required,
                provided: policy.mantissa_bits(),
            });
        }
        let n = params.n() as u64;
        let mut ctx = ExtContext::new(policy.mantissa_bits());
        let one = ctx.from_u64(1);
        let a = ctx.from_f64(params.ratio());
        let c = ctx.sub(&ctx.mul(&a, &a), &one);
        let n_ext = ctx.from_u64(n);

        let ln_plus = ctx.ln(&ctx.add(&a, &one));
        let ln_minus = ctx.ln(&ctx.sub(&a, &one));
        let ln2 = ctx.ln2();
        let pi = ctx.pi();
        let two_pi = ctx.mul(&ctx.from_u64(2), &pi);
        let norm_arg = ctx.div(&n_ext, &ctx.mul(&two_pi, &c));
        let half = ctx.from_f64(0.5);
        let ln_norm_arg = ctx.ln(&norm_arg);
        let ln_omega0 = ctx.ln(&ctx.from_f64(params.omega0()));
        let ln_norm = ctx.sub(&ctx.mul(&half, &ln_norm_arg), &ln_omega0);
        let base = ctx.sub(&ln_norm, &ctx.mul(&n_ext, &ln2));

        // ln C(n, m) from running sums of ln k
        let mut ln_fact = vec![ctx.zero()];
        for k in 1..=n {
            let ln_k = ctx.ln(&ctx.from_u64(k));
            let next = ctx.add(&ln_fact[k as usize - 1], &ln_k);
            ln_fact.push(next);
        }
        let log_weights = (0..=n)
            .map(|m| {
                let binom = ctx.sub(
                    &ln_fact[n as usize],
                    &ctx.add(&ln_fact[m as usize], &ln_fact[(n - m) as usize]),
                );
                let powers = ctx.add(
                    &ctx.mul(&ctx.from_u64(m), &ln_plus),
                    &ctx.mul(&ctx.from_u64(n - m), &ln_minus),
                );
                ctx.add(&base, &ctx.add(&binom, &powers))
            })
            .collect();
        let kappa = ctx.div(&n_ext, &ctx.mul(&ctx.from_u64(2), &c));
        Ok(GaussianSumPlan {
            params: *params,
            policy,
            log_weights,
            kappa,
        })
    }

    pub fn policy(&self) -> PrecisionPolicy {
        self.policy
    }

    /// `2^-n C(n,m) (1+a)^m (1-a)^(n-m)` as f64, for inspection.
    pub fn coefficients(&self) -> Vec<f64> {
        let n = self.params.n();
        let mut ctx = ExtContext::new(self.policy.mantissa_bits());
        let norm = {
            let c = self.params.c();
            (n as f64 / (2.0 * std::f64::consts::PI * c)).sqrt() / self.params.omega0()
        };
        self.log_weights
            .iter()
            .enumerate()
            .map(|(m, w)| {
                let sign = if (n as usize - m) % 2 == 0 { 1.0 } else { -1.0 };
                sign * ctx.exp(w).to_f64() / norm
            })
            .collect()
    }

    /// `F(omega)` with `omega` in rad/s.
    pub fn eval(&self, omega: f64) -> Result<f64> {
        let n = self.params.n() as i64;
        let ctx = ExtContext::new(self.policy.mantissa_bits());
        let n_ext = ctx.from_i64(n);
        let shift = ctx.from_f64(omega / self.params.omega0());
        let terms = self
            .log_weights
            .iter()
            .enumerate()
            .map(|(m, w)| {
                let m = m as i64;
                let centre = ctx.div(&ctx.from_i64(2 * m - n), &n_ext);
                let eta = ctx.sub(&centre, &shift);
                let log_term = ctx.sub(w, &ctx.mul(&self.kappa, &ctx.mul(&eta, &eta)));
                let sign = if (n - m) % 2 == 0 { 1 } else { -1 };
                SignedLogReal::from_ext(sign, log_term)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(signed_log_sum(terms, self.policy)?.to_f64())
    }
}

/// One-shot [`GaussianSumPlan`] evaluation at `omega` (rad/s).
pub fn ft_gaussian_sum(params: &SignalParams, omega: f64, policy: PrecisionPolicy) -> Result<f64> {
    GaussianSumPlan::new(params, policy)?.eval(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(n: u32) -> SignalParams {
        SignalParams::with_ratio(n, 2.0, 1.0).unwrap()
    }

    #[test]
    fn coefficients_sum_to_one() {
        for n in [1u32, 2, 7, 16, 64] {
            let plan = GaussianSumPlan::new(&p(n), PrecisionPolicy::for_cancellation(n, 2.0)).unwrap();
            let coefs = plan.coefficients();
            assert_eq!(coefs.len(), n as usize + 1);
            let sum: f64 = coefs.iter().sum();
            let scale: f64 = coefs.iter().map(|c| c.abs()).sum();
            assert!((sum - 1.0).abs() < 1e-15 * scale, "n = {n}: {sum}");
        }
    }

    #[test]
    fn first_order_closed_form() {
        let params = p(1);
        let g = |eta: f64| (1.0 / (6.0 * PI)).sqrt() * (-eta * eta / 6.0).exp();
        let plan = GaussianSumPlan::new(&params, PrecisionPolicy::for_cancellation(1, 2.0)).unwrap();
        for &w in &[-2.0, -0.5, 0.0, 1.0, 3.0] {
            let expected = 0.5 * (3.0 * g(1.0 - w) - g(-1.0 - w));
            assert!((plan.eval(w).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn refuses_short_budgets_and_other_dampings() {
        let params = p(128);
        let short = PrecisionPolicy::new(PrecisionPolicy::required_bits(128, 2.0) - 1).unwrap();
        assert!(matches!(
            ft_gaussian_sum(&params, 2.0, short),
            Err(Error::InsufficientPrecision { .. })
        ));
        let half = params.with_alpha(0.5).unwrap();
        assert!(matches!(
            ft_gaussian_sum(&half, 2.0, PrecisionPolicy::for_cancellation(128, 2.0)),
            Err(Error::UnsupportedAlpha(_))
        ));
    }
}
