//! Scalar abstractions shared by the exact and the floating-point layers.
//!
//! [`Field`] is what the polynomial and matrix code needs from its
//! coefficients: exact for `BigRational`, approximate for `f64`/`BigFloat`.
//! [`Real`] adds the transcendental operations used by the series code.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Coefficient field for [`crate::LaurentPoly`], [`crate::CPoly`] and [`crate::Matrix`].
pub trait Field: Num + Clone + Debug + Neg<Output = Self> {
    /// Embeds a machine integer.
    fn from_i64(v: i64) -> Self;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// Real numbers with an explicit working precision in bits.
///
/// Every constructor takes the precision; fixed-width types ignore it.
/// Binary operations on values of different precision produce the larger one.
pub trait Real:
    Field
    + PartialOrd
    + for<'a> std::ops::Add<&'a Self, Output = Self>
    + for<'a> std::ops::Sub<&'a Self, Output = Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
    + for<'a> std::ops::Div<&'a Self, Output = Self>
{
    fn int(v: i64, prec: u32) -> Self;
    fn from_bigint(v: &BigInt, prec: u32) -> Self;
    fn pi(prec: u32) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn abs(&self) -> Self;
    /// Integer power; negative exponents take the reciprocal.
    fn powi(&self, n: i64) -> Self;
    /// Mantissa bits carried by this value.
    fn precision(&self) -> u32;
    fn to_f64(&self) -> f64;
    /// `log2(|self|)`, `-inf` for zero. Only needs to be accurate to a fraction of a bit.
    fn log2_abs(&self) -> f64;
    /// Decimal scientific rendering with `digits` significant digits.
    fn to_sci(&self, digits: usize) -> String;

    fn from_rational(v: &BigRational, prec: u32) -> Self {
        let num = Self::from_bigint(v.numer(), prec + 64);
        let den = Self::from_bigint(v.denom(), prec + 64);
        num / den
    }

    /// `2^e` exactly.
    fn pow2(e: i64, prec: u32) -> Self {
        Self::int(2, prec).powi(e)
    }

    fn sinh(&self) -> Self {
        let e = self.exp();
        let inv = Self::one() / e.clone();
        (e - inv) / Self::from_i64(2)
    }

    fn cosh(&self) -> Self {
        let e = self.exp();
        let inv = Self::one() / e.clone();
        (e + inv) / Self::from_i64(2)
    }

    fn tanh(&self) -> Self {
        // tanh(x) = (1 - q) / (1 + q), q = e^{-2|x|}
        let q = (-(self.abs() * Self::from_i64(2))).exp();
        let t = (Self::one() - q.clone()) / (Self::one() + q);
        if *self < Self::zero() {
            -t
        } else {
            t
        }
    }
}

impl Real for f64 {
    fn int(v: i64, _prec: u32) -> Self {
        v as f64
    }
    fn from_bigint(v: &BigInt, _prec: u32) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn from_rational(v: &BigRational, _prec: u32) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn pi(_prec: u32) -> Self {
        std::f64::consts::PI
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powi(&self, n: i64) -> Self {
        f64::powi(*self, n as i32)
    }
    fn precision(&self) -> u32 {
        53
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn log2_abs(&self) -> f64 {
        f64::abs(*self).log2()
    }
    fn to_sci(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn tanh(&self) -> Self {
        f64::tanh(*self)
    }
}

/// Parses `"0.5"`, `"1e-12"`, `"-3/4"` or `"2.5E3"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Renders an exact rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn rational_signum(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
