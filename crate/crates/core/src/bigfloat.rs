//! Arbitrary-precision binary floating point with an explicit precision per value.
//!
//! Thin wrapper over `astro_float`: values remember their precision and binary
//! operations round to the larger of the two operand precisions. Constant
//! caches (pi, ln 2) are kept per thread.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use astro_float::{Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::BigInt;
use num_traits::{Num, One, Zero};

use crate::scalar::{Field, Real};

const RM: RoundingMode = RoundingMode::ToEven;

/// Smallest precision handed to the backend; also the precision of `zero()`/`one()`.
pub const MIN_PRECISION: u32 = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

#[derive(Clone)]
pub struct BigFloat {
    inner: astro_float::BigFloat,
    prec: u32,
}

impl BigFloat {
    fn wrap(inner: astro_float::BigFloat, prec: u32) -> Self {
        Self { inner, prec }
    }

    fn p(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }

    /// Rounds (or widens) to `prec` bits.
    pub fn with_precision(&self, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let zero = astro_float::BigFloat::from_word(0, prec as usize);
        Self::wrap(self.inner.add(&zero, prec as usize, RM), prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Self::wrap(astro_float::BigFloat::from_f64(v, prec as usize), prec)
    }

    pub fn is_zero_value(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.inner.is_nan() || self.inner.is_inf())
    }

    /// Full decimal expansion as produced by the backend.
    pub fn to_decimal_string(&self) -> String {
        CONSTS.with(|cc| self.inner.format(Radix::Dec, RM, &mut cc.borrow_mut()))
            .unwrap_or_else(|_| "NaN".to_owned())
    }

    fn top_word(&self) -> Option<(Word, i64, bool)> {
        if self.inner.is_zero() {
            return None;
        }
        let (m, _, sign, e, _) = self.inner.as_raw_parts()?;
        let top = *m.last()?;
        Some((top, e as i64, sign == Sign::Neg))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, {} bits)", self.to_sci(20), self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec as f64 * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_sci(digits.max(1)))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.inner.partial_cmp(&other.inner)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                let p = self.p(rhs);
                BigFloat::wrap(self.inner.$method(&rhs.inner, p as usize, RM), p)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &'a BigFloat) -> BigFloat {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Rem for BigFloat {
    type Output = BigFloat;
    fn rem(self, rhs: BigFloat) -> BigFloat {
        let p = self.p(&rhs);
        BigFloat::wrap(self.inner.rem(&rhs.inner), p)
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(self.inner.neg(), self.prec)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        Self::wrap(astro_float::BigFloat::from_word(0, MIN_PRECISION as usize), MIN_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        Self::wrap(astro_float::BigFloat::from_word(1, MIN_PRECISION as usize), MIN_PRECISION)
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = ();
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, ()> {
        if radix != 10 {
            return Err(());
        }
        let r = crate::scalar::parse_rational(s).ok_or(())?;
        Ok(<BigFloat as Real>::from_rational(&r, 256))
    }
}

impl Field for BigFloat {
    fn from_i64(v: i64) -> Self {
        Self::wrap(astro_float::BigFloat::from_i64(v, MIN_PRECISION as usize), MIN_PRECISION)
    }
}

impl Real for BigFloat {
    fn int(v: i64, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Self::wrap(astro_float::BigFloat::from_i64(v, prec as usize), prec)
    }

    fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let (sign, digits) = v.to_u64_digits();
        if digits.is_empty() {
            return Self::int(0, prec);
        }
        let sign = match sign {
            num_bigint::Sign::Minus => Sign::Neg,
            _ => Sign::Pos,
        };
        let words: Vec<Word> = digits.iter().map(|&d| d as Word).collect();
        let e = (words.len() * Word::BITS as usize) as astro_float::Exponent;
        let exact = astro_float::BigFloat::from_words(&words, sign, e);
        Self::wrap(exact, (words.len() as u32) * Word::BITS).with_precision(prec)
    }

    fn pi(prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let v = CONSTS.with(|cc| cc.borrow_mut().pi(prec as usize, RM));
        Self::wrap(v, prec)
    }

    fn exp(&self) -> Self {
        let v = CONSTS.with(|cc| self.inner.exp(self.prec as usize, RM, &mut cc.borrow_mut()));
        Self::wrap(v, self.prec)
    }

    fn ln(&self) -> Self {
        let v = CONSTS.with(|cc| self.inner.ln(self.prec as usize, RM, &mut cc.borrow_mut()));
        Self::wrap(v, self.prec)
    }

    fn abs(&self) -> Self {
        Self::wrap(self.inner.abs(), self.prec)
    }

    fn powi(&self, n: i64) -> Self {
        let p = self.inner.powi(n.unsigned_abs() as usize, self.prec as usize + 32, RM);
        let v = Self::wrap(p, self.prec);
        if n < 0 {
            let one = Self::int(1, self.prec);
            &one / &v
        } else {
            v.with_precision(self.prec)
        }
    }

    fn precision(&self) -> u32 {
        self.prec
    }

    fn to_f64(&self) -> f64 {
        match self.top_word() {
            None => 0.0,
            Some((top, e, neg)) => {
                let mag = top as f64 * 2f64.powi((e - Word::BITS as i64).clamp(-2000, 2000) as i32);
                if neg {
                    -mag
                } else {
                    mag
                }
            }
        }
    }

    fn log2_abs(&self) -> f64 {
        match self.top_word() {
            None => f64::NEG_INFINITY,
            Some((top, e, _)) => (top as f64).log2() + (e - Word::BITS as i64) as f64,
        }
    }

    fn to_sci(&self, digits: usize) -> String {
        if self.inner.is_zero() {
            return "0".to_owned();
        }
        if !self.is_finite() {
            return "NaN".to_owned();
        }
        let s = self.to_decimal_string();
        let (mantissa, exponent) = s.split_once('e').unwrap_or((s.as_str(), "+0"));
        let (neg, mantissa) = match mantissa.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, mantissa),
        };
        let all: Vec<u8> = mantissa.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
        let take = digits.max(1).min(all.len());
        let mut kept = all[..take].to_vec();
        let mut exponent: i64 = exponent.trim_start_matches('+').parse().unwrap_or(0);
        if all.get(take).is_some_and(|&d| d >= 5) {
            let mut i = take;
            loop {
                if i == 0 {
                    kept.insert(0, 1);
                    kept.pop();
                    exponent += 1;
                    break;
                }
                i -= 1;
                if kept[i] == 9 {
                    kept[i] = 0;
                } else {
                    kept[i] += 1;
                    break;
                }
            }
        }
        let text: String = kept.iter().map(|d| char::from(b'0' + d)).collect();
        let head = &text[..1];
        let tail = text[1..].trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{exponent}")
        } else {
            format!("{sign}{head}.{tail}e{exponent}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_rounding() {
        let tol = BigFloat::from_rational(&crate::scalar::parse_rational("1e-12").unwrap(), 288);
        assert_eq!(tol.to_sci(6), "1e-12");
        assert_eq!(BigFloat::from_f64(9.9999996, 64).to_sci(6), "1e1");
        assert_eq!(BigFloat::from_f64(-0.125, 64).to_sci(2), "-1.3e-1");
        assert_eq!(BigFloat::from_f64(0.125, 64).to_sci(3), "1.25e-1");
    }
    use num_rational::BigRational;

    #[test]
    fn integer_conversion_is_exact() {
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let x = BigFloat::from_bigint(&big, 256);
        assert_eq!(x.to_sci(39), "1.23456789012345678901234567890123456789e38");
        let neg = BigFloat::from_bigint(&(-big), 256);
        assert!(neg < BigFloat::zero());
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(1.into(), 3.into());
        let x = BigFloat::from_rational(&r, 128);
        let back = &x * &BigFloat::int(3, 128);
        let err = (back - BigFloat::int(1, 128)).abs();
        assert!(err.log2_abs() < -120.0);
    }

    #[test]
    fn pi_digits() {
        let pi = BigFloat::pi(256);
        assert_eq!(pi.to_sci(30), "3.14159265358979323846264338328e0");
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let x = BigFloat::from_f64(1.75, 200);
        let y = x.exp().ln();
        assert!((y - x).abs().log2_abs() < -190.0);
    }

    #[test]
    fn negative_powers() {
        let two = BigFloat::int(2, 128);
        assert_eq!(two.powi(-3).to_f64(), 0.125);
        assert_eq!(two.powi(10).to_f64(), 1024.0);
    }

    #[test]
    fn mixed_precision_takes_max() {
        let a = BigFloat::int(1, 100);
        let b = BigFloat::int(3, 300);
        assert_eq!((&a / &b).precision(), 300);
        assert_eq!((BigFloat::one() + a).precision(), 100);
    }
}
