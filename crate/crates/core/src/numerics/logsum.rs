//! Sign-tracked log-domain values and cancellation-safe summation.

use std::cmp::Ordering;
use std::f64::consts::LN_2;

use serde::Serialize;

use super::extended::{ExtContext, ExtReal};
use crate::error::{Error, Result};

/// Largest |log| accepted; the big-float exponent range sits far above this.
pub const MAX_LOG_ABS: f64 = 1.0e8;

/// Mantissa-bit budget for an extended-precision evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrecisionPolicy {
    mantissa_bits: usize,
}

impl PrecisionPolicy {
    pub const MIN_BITS: usize = 64;
    /// Bits kept on top of the worst-case cancellation.
    pub const MARGIN_BITS: usize = 256;

    pub fn new(mantissa_bits: usize) -> Result<Self> {
        if mantissa_bits < Self::MIN_BITS {
            return Err(Error::InvalidPrecision(mantissa_bits));
        }
        Ok(PrecisionPolicy { mantissa_bits })
    }

    /// `ceil(n * log2(1 + ratio)) + 256`: term magnitudes in the Gaussian
    /// superposition reach `(1 + ratio)^n / 2^n` times the kernel peak, while
    /// the sum itself stays O(1).
    pub fn required_bits(n: u32, ratio: f64) -> usize {
        let worst = (n as f64 * (1.0 + ratio).log2()).ceil().max(0.0) as usize;
        (worst + Self::MARGIN_BITS).max(Self::MIN_BITS)
    }

    pub fn for_cancellation(n: u32, ratio: f64) -> Self {
        PrecisionPolicy {
            mantissa_bits: Self::required_bits(n, ratio),
        }
    }

    pub fn mantissa_bits(&self) -> usize {
        self.mantissa_bits
    }

    pub fn doubled(&self) -> Self {
        PrecisionPolicy {
            mantissa_bits: 2 * self.mantissa_bits,
        }
    }
}

/// A real stored as sign and natural log of its magnitude.
///
/// Zero is `sign == 0` with a `-inf` log.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedLogReal {
    sign: i8,
    log_abs: ExtReal,
}

impl SignedLogReal {
    pub fn zero() -> Self {
        SignedLogReal {
            sign: 0,
            log_abs: ExtReal::neg_infinity(),
        }
    }

    /// `sign * exp(log_abs)`. A zero sign yields zero regardless of `log_abs`.
    pub fn new(sign: i8, log_abs: f64) -> Result<Self> {
        if sign == 0 {
            return Ok(Self::zero());
        }
        if log_abs == f64::NEG_INFINITY {
            return Ok(Self::zero());
        }
        if !log_abs.is_finite() {
            return Err(Error::NonFiniteTerm);
        }
        Self::from_ext(sign, ExtReal::from_f64(log_abs))
    }

    /// Same as [`SignedLogReal::new`] with a log carried at extended precision.
    pub fn from_ext(sign: i8, log_abs: ExtReal) -> Result<Self> {
        if sign == 0 || log_abs.is_neg_infinity() {
            return Ok(Self::zero());
        }
        if !log_abs.is_finite() {
            return Err(Error::NonFiniteTerm);
        }
        let approx = log_abs.to_f64();
        if approx.abs() > MAX_LOG_ABS {
            return Err(Error::LogRangeOverflow(approx));
        }
        Ok(SignedLogReal {
            sign: sign.signum(),
            log_abs,
        })
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFiniteTerm);
        }
        if x == 0.0 {
            return Ok(Self::zero());
        }
        // ln at 128 bits keeps the round trip within f64 rounding.
        let mut ctx = ExtContext::new(128);
        let log_abs = ctx.ln(&ctx.from_f64(x.abs()));
        Self::from_ext(if x < 0.0 { -1 } else { 1 }, log_abs)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs.to_f64()
    }

    pub fn log_abs_ext(&self) -> &ExtReal {
        &self.log_abs
    }

    /// Linear value; saturates to +-inf past the f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let approx = self.log_abs.to_f64();
        if approx > 710.0 {
            return self.sign as f64 * f64::INFINITY;
        }
        if approx < -746.0 {
            return self.sign as f64 * 0.0;
        }
        let mut ctx = ExtContext::new(self.log_abs.precision().max(64));
        self.sign as f64 * ctx.exp(&self.log_abs).to_f64()
    }
}

/// Sums signed log-domain terms at `policy` precision.
///
/// Terms are put in a canonical order (decreasing magnitude, then sign) before
/// accumulation, so the result does not depend on input order. The relative
/// error stays near `2^-64` as long as the cancellation factor (largest term
/// over result) is below `2^(bits - 64)`.
pub fn signed_log_sum<I>(terms: I, policy: PrecisionPolicy) -> Result<SignedLogReal>
where
    I: IntoIterator<Item = SignedLogReal>,
{
    let mut live: Vec<SignedLogReal> = terms.into_iter().filter(|t| !t.is_zero()).collect();
    if live.is_empty() {
        return Ok(SignedLogReal::zero());
    }
    for t in &live {
        if !t.log_abs.is_finite() {
            return Err(Error::NonFiniteTerm);
        }
        let approx = t.log_abs.to_f64();
        if approx.abs() > MAX_LOG_ABS {
            return Err(Error::LogRangeOverflow(approx));
        }
    }
    live.sort_by(|a, b| match b.log_abs.total_cmp(&a.log_abs) {
        Ordering::Equal => a.sign.cmp(&b.sign),
        other => other,
    });

    let bits = policy.mantissa_bits();
    let mut ctx = ExtContext::new(bits);
    let shift_f64 = live[0].log_abs.to_f64();
    let shift = ExtReal::from_f64(shift_f64);
    // Below this relative size a term cannot move the result at this precision.
    let cutoff = -((bits + 64) as f64) * LN_2;

    let mut acc = ctx.zero();
    for t in &live {
        let rel = ctx.sub(&t.log_abs, &shift);
        if rel.to_f64() < cutoff {
            break;
        }
        let mag = ctx.exp(&rel);
        acc = if t.sign < 0 {
            ctx.sub(&acc, &mag)
        } else {
            ctx.add(&acc, &mag)
        };
    }

    let sign = acc.signum();
    if sign == 0 {
        return Ok(SignedLogReal::zero());
    }
    let log_rel = ctx.ln(&acc.abs());
    let log_abs = ctx.add(&shift, &log_rel);
    SignedLogReal::from_ext(sign, log_abs)
}
