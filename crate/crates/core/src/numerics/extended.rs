//! Software big-float reals with an explicit per-context mantissa budget.
//!
//! Thin layer over `astro-float`: every operation rounds to the context's
//! precision, and the only transcendentals exposed are exp, ln and sqrt.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

/// An extended-precision real.
#[derive(Clone)]
pub struct ExtReal(BigFloat);

impl ExtReal {
    /// Exact conversion; any f64 fits in 64 mantissa bits.
    pub fn from_f64(x: f64) -> Self {
        ExtReal(BigFloat::from_f64(x, 64))
    }

    pub fn neg_infinity() -> Self {
        ExtReal(astro_float::INF_NEG)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_neg_infinity(&self) -> bool {
        self.0.is_inf_neg()
    }

    pub fn is_finite(&self) -> bool {
        !(self.0.is_inf() || self.0.is_nan())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn neg(&self) -> Self {
        ExtReal(self.0.neg())
    }

    pub fn abs(&self) -> Self {
        ExtReal(self.0.abs())
    }

    pub fn signum(&self) -> i8 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Mantissa length in bits, or 0 for infinities and NaN.
    pub fn precision(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(0)
    }

    /// Rounds to the nearest f64 (one rounding from the leading 64 mantissa bits).
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _, sign, exponent, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        // value = 0.m * 2^exponent, and `top` holds the leading 64 bits of m
        let magnitude = ldexp(top as f64, exponent as i64 - 64);
        match sign {
            Sign::Neg => -magnitude,
            Sign::Pos => magnitude,
        }
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match self.0.cmp(&other.0) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtReal({:e})", self.to_f64())
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

fn ldexp(mut x: f64, mut k: i64) -> f64 {
    if k > 2200 {
        return x * f64::INFINITY;
    }
    if k < -2200 {
        return x * 0.0;
    }
    let up = 2f64.powi(1000);
    let down = 2f64.powi(-1000);
    while k > 1000 {
        x *= up;
        k -= 1000;
    }
    while k < -1000 {
        x *= down;
        k += 1000;
    }
    x * 2f64.powi(k as i32)
}

/// Arithmetic context: mantissa budget plus the constant cache used by exp/ln.
///
/// Each context is owned by a single computation; nothing is shared between calls.
pub struct ExtContext {
    bits: usize,
    consts: Consts,
}

impl ExtContext {
    pub fn new(bits: usize) -> Self {
        let consts = Consts::new().expect("allocating the big-float constant cache");
        ExtContext { bits, consts }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn from_f64(&self, x: f64) -> ExtReal {
        ExtReal(BigFloat::from_f64(x, self.bits.max(64)))
    }

    pub fn from_u64(&self, x: u64) -> ExtReal {
        ExtReal(BigFloat::from_u64(x, self.bits.max(64)))
    }

    pub fn from_i64(&self, x: i64) -> ExtReal {
        ExtReal(BigFloat::from_i64(x, self.bits.max(64)))
    }

    pub fn zero(&self) -> ExtReal {
        self.from_u64(0)
    }

    pub fn round(&self, a: &ExtReal) -> ExtReal {
        let mut v = a.0.clone();
        if v.set_precision(self.bits, RM).is_err() {
            return a.clone();
        }
        ExtReal(v)
    }

    pub fn add(&self, a: &ExtReal, b: &ExtReal) -> ExtReal {
        ExtReal(a.0.add(&b.0, self.bits, RM))
    }

    pub fn sub(&self, a: &ExtReal, b: &ExtReal) -> ExtReal {
        ExtReal(a.0.sub(&b.0, self.bits, RM))
    }

    pub fn mul(&self, a: &ExtReal, b: &ExtReal) -> ExtReal {
        ExtReal(a.0.mul(&b.0, self.bits, RM))
    }

    pub fn div(&self, a: &ExtReal, b: &ExtReal) -> ExtReal {
        ExtReal(a.0.div(&b.0, self.bits, RM))
    }

    pub fn sqrt(&self, a: &ExtReal) -> ExtReal {
        ExtReal(a.0.sqrt(self.bits, RM))
    }

    pub fn exp(&mut self, a: &ExtReal) -> ExtReal {
        ExtReal(a.0.exp(self.bits, RM, &mut self.consts))
    }

    /// Natural log; zero maps to -inf.
    pub fn ln(&mut self, a: &ExtReal) -> ExtReal {
        ExtReal(a.0.ln(self.bits, RM, &mut self.consts))
    }

    pub fn pi(&mut self) -> ExtReal {
        ExtReal(self.consts.pi(self.bits, RM))
    }

    pub fn ln2(&mut self) -> ExtReal {
        ExtReal(self.consts.ln_2(self.bits, RM))
    }
}
