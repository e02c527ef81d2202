//! Laurent polynomials in one variable `z` and the four `(z ± 1/z)` power identities.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactcore::{binom, binom_q, pow2_q, q};
use crate::report::IdentityReport;
use crate::scalar::Field;
use crate::Rational;

/// Finitely supported map from exponents in ℤ to nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<T> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Field> LaurentPoly<T> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn monomial(c: T, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `z^a + s z^{-a}` style binomials: `c1 z^e1 + c2 z^e2`.
    pub fn binomial(c1: T, e1: i64, c2: T, e2: i64) -> Self {
        Self::from_terms([(e1, c1), (e2, c2)])
    }

    fn add_term(&mut self, e: i64, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.coeffs.insert(e, s);
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: i64) -> T {
        self.coeffs.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest and highest exponent present.
    pub fn span(&self) -> Option<(i64, i64)> {
        let lo = *self.coeffs.keys().next()?;
        let hi = *self.coeffs.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, v)| (*e, v.clone() * c.clone())))
    }

    /// Substitutes `z ↦ 1/z`.
    pub fn invert_variable(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Power by repeated squaring; `pow(0)` is 1.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluates at `z`; `z` must be invertible when negative exponents are present.
    pub fn eval(&self, z: &T) -> T {
        let inv = T::one() / z.clone();
        self.coeffs.iter().fold(T::zero(), |acc, (e, c)| {
            let base = if *e >= 0 { z } else { &inv };
            let mut pw = T::one();
            for _ in 0..e.unsigned_abs() {
                pw = pw * base.clone();
            }
            acc + c.clone() * pw
        })
    }

    /// First exponent (ascending) where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter().find(|e| self.coeff(*e) != other.coeff(*e))
    }
}

pub fn lp_mul<T: Field>(a: &LaurentPoly<T>, b: &LaurentPoly<T>) -> LaurentPoly<T> {
    a.mul(b)
}

pub fn lp_pow<T: Field>(a: &LaurentPoly<T>, e: u32) -> LaurentPoly<T> {
    a.pow(e)
}

impl<T: Field> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Field> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Field> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        LaurentPoly::mul(self, rhs)
    }
}

impl<T: Field> Neg for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

/// The four power identities, numbered as in the ordering
/// `(z+1/z)^{4M+2} - ...`, `(z+1/z)^{4M} - ...`, `(z+1/z)^{4M} + ...`, `(z+1/z)^{4M+2} + ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerIdentity {
    OddPowerDifference,
    EvenPowerDifference,
    EvenPowerSum,
    OddPowerSum,
}

impl PowerIdentity {
    pub const ALL: [PowerIdentity; 4] = [
        PowerIdentity::OddPowerDifference,
        PowerIdentity::EvenPowerDifference,
        PowerIdentity::EvenPowerSum,
        PowerIdentity::OddPowerSum,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }
}

fn z_plus() -> LaurentPoly<Rational> {
    LaurentPoly::binomial(Rational::one(), 1, Rational::one(), -1)
}

fn z_minus() -> LaurentPoly<Rational> {
    LaurentPoly::binomial(Rational::one(), 1, -Rational::one(), -1)
}

fn z2_minus() -> LaurentPoly<Rational> {
    LaurentPoly::binomial(Rational::one(), 2, -Rational::one(), -2)
}

fn z2_plus() -> LaurentPoly<Rational> {
    LaurentPoly::binomial(Rational::one(), 2, Rational::one(), -2)
}

/// Left side `½(z+1/z)^e ± ½(z−1/z)^e`.
pub fn power_identity_lhs(id: PowerIdentity, m: u32) -> LaurentPoly<Rational> {
    let (e, sign) = match id {
        PowerIdentity::OddPowerDifference => (4 * m + 2, -1),
        PowerIdentity::EvenPowerDifference => (4 * m, -1),
        PowerIdentity::EvenPowerSum => (4 * m, 1),
        PowerIdentity::OddPowerSum => (4 * m + 2, 1),
    };
    let half = q(1, 2);
    let a = z_plus().pow(e).scale(&half);
    let b = z_minus().pow(e).scale(&(half * q(sign, 1)));
    &a + &b
}

/// Right side: weighted sums of `(z² − 1/z²)^{2(·)}`, times `(z² + 1/z²)` for identities 2 and 4.
pub fn power_identity_rhs(id: PowerIdentity, m: u32) -> LaurentPoly<Rational> {
    let mi = m as i64;
    let d = z2_minus();
    let mut sum = LaurentPoly::zero();
    let (k_hi, prefactor) = match id {
        PowerIdentity::EvenPowerDifference => (mi - 1, Some(q(4, 1))),
        PowerIdentity::OddPowerSum => (mi, Some(q(1, 1))),
        _ => (mi, None),
    };
    for k in 0..=k_hi {
        let weight = match id {
            PowerIdentity::OddPowerDifference => q(4 * mi + 2, 2 * k + 1),
            PowerIdentity::EvenPowerDifference => q(mi - k, 2 * k + 1),
            PowerIdentity::EvenPowerSum => q(mi, mi + k),
            PowerIdentity::OddPowerSum => q(1, 1),
        } * pow2_q(4 * k)
            * binom_q(mi + k, 2 * k);
        let power = match id {
            PowerIdentity::EvenPowerDifference => 2 * (mi - 1 - k),
            _ => 2 * (mi - k),
        };
        sum = &sum + &d.pow(power as u32).scale(&weight);
    }
    match prefactor {
        Some(c) => z2_plus().scale(&c).mul(&sum),
        None => sum,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("M must be at least 1")]
    NonPositiveM,
    #[error("index j = {j} outside 0..={max} for this family")]
    IndexOutOfRange { j: i64, max: i64 },
}

/// Expands both sides of each power identity for this `M` and compares exactly.
pub fn check_prop21(m: u32) -> Result<IdentityReport, LaurentError> {
    if m == 0 {
        return Err(LaurentError::NonPositiveM);
    }
    let mut report = IdentityReport::new(format!("power identities M={m}"));
    for id in PowerIdentity::ALL {
        let lhs = power_identity_lhs(id, m);
        let rhs = power_identity_rhs(id, m);
        let holds = lhs == rhs;
        let span = lhs.span().unwrap_or((0, 0));
        report.exact(
            format!("power_identity_{}/M={m:02}", id.number()),
            "prop_2_1",
            holds,
            || {
                format!(
                    "max degree {}, first mismatching exponent {:?}",
                    span.1,
                    lhs.first_mismatch(&rhs)
                )
            },
        );
    }
    Ok(report)
}

/// Which power the alternating sum reproduces: `4M` or `4M+2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    FourM,
    FourMPlusTwo,
}

/// `S_{2j}` (even) or `S_{2j+1}` (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// The alternating sum `S` together with its indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SValue {
    pub family: Family,
    pub parity: Parity,
    pub m: u32,
    pub j: i64,
    pub value: Rational,
}

impl SValue {
    /// The binomial the sum must equal: `binom(4M or 4M+2, 2j or 2j+1)`.
    pub fn closed_form(&self) -> Rational {
        let top = match self.family {
            Family::FourM => 4 * self.m as i64,
            Family::FourMPlusTwo => 4 * self.m as i64 + 2,
        };
        let bottom = match self.parity {
            Parity::Even => 2 * self.j,
            Parity::Odd => 2 * self.j + 1,
        };
        binom_q(top, bottom)
    }
}

fn max_j(family: Family, parity: Parity, m: u32) -> i64 {
    match (family, parity) {
        (Family::FourM, Parity::Odd) => m as i64 - 1,
        _ => m as i64,
    }
}

/// Evaluates the alternating coefficient sum `S_{2j}^{4M+2}`, `S_{2j}^{4M}`,
/// `S_{2j+1}^{4M+2}` or `S_{2j+1}^{4M}`.
pub fn s_value(family: Family, parity: Parity, m: u32, j: i64) -> Result<SValue, LaurentError> {
    let max = max_j(family, parity, m);
    if m == 0 {
        return Err(LaurentError::NonPositiveM);
    }
    if j < 0 || j > max {
        return Err(LaurentError::IndexOutOfRange { j, max });
    }
    let mi = m as i64;
    let mut value = Rational::zero();
    for k in 0..=j {
        let b = binom(mi + k, 2 * k);
        let term: Rational = match (family, parity) {
            (Family::FourMPlusTwo, Parity::Even) => {
                Rational::from_integer(binom(2 * (mi - k), j - k) - binom(2 * (mi - k), j - 1 - k)) * pow2_q(4 * k)
            }
            (Family::FourM, Parity::Even) => q(mi, mi + k) * binom_q(2 * (mi - k), j - k) * pow2_q(4 * k),
            (Family::FourMPlusTwo, Parity::Odd) => {
                q(4 * mi + 2, 2 * k + 1) * binom_q(2 * (mi - k), j - k) * pow2_q(4 * k)
            }
            (Family::FourM, Parity::Odd) => {
                q(mi - k, 2 * k + 1)
                    * Rational::from_integer(binom(2 * (mi - 1 - k), j - k) - binom(2 * (mi - 1 - k), j - 1 - k))
                    * pow2_q(4 * k + 2)
            }
        } * Rational::from_integer(b);
        if (j - k) % 2 == 0 {
            value += term;
        } else {
            value -= term;
        }
    }
    Ok(SValue { family, parity, m, j, value })
}

/// Checks the four three-term recurrences between the `S` sums and the closed
/// forms `S = binom(·, ·)` for every admissible `j`.
pub fn check_s_recurrences(m: u32) -> Result<IdentityReport, LaurentError> {
    use Family::*;
    use Parity::*;
    if m == 0 {
        return Err(LaurentError::NonPositiveM);
    }
    let mi = m as i64;
    let s = |f, p, j| s_value(f, p, m, j).map(|v| v.value);
    let mut report = IdentityReport::new(format!("S recurrences M={m}"));

    for (family, parity, tag) in [
        (FourMPlusTwo, Even, "S_2j^4M+2"),
        (FourM, Even, "S_2j^4M"),
        (FourMPlusTwo, Odd, "S_2j+1^4M+2"),
        (FourM, Odd, "S_2j+1^4M"),
    ] {
        let bad: Vec<i64> = (0..=max_j(family, parity, m))
            .filter(|&j| {
                let v = s_value(family, parity, m, j).expect("index in range");
                v.value != v.closed_form()
            })
            .collect();
        report.exact(format!("s_closed_form/{tag}/M={m:02}"), "prop_2_1_proof", bad.is_empty(), || {
            format!("({tag}, j) mismatches at j = {bad:?}")
        });
    }

    let qi = |v: i64| q(v, 1);
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut third = Vec::new();
    let mut fourth = Vec::new();
    for j in 1..=mi {
        let lhs = qi((2 * mi - 2 * j + 3) * (4 * mi + 2) * j) * s(FourMPlusTwo, Even, j)?
            + qi(4 * (2 * mi - 2 * j + 2) * (2 * mi - 2 * j + 1) * (3 * mi - j + 2)) * s(FourMPlusTwo, Odd, j - 1)?
            - qi(2 * (2 * mi - 2 * j + 2) * (4 * mi + 1) * (4 * mi + 2)) * s(FourM, Odd, j - 1)?;
        let rhs = -qi((2 * mi - 2 * j + 1) * (2 * mi - j + 2) * (4 * mi + 2)) * s(FourMPlusTwo, Even, j - 1)?;
        if lhs != rhs {
            first.push(j);
        }

        let lhs = qi(j) * s(FourM, Even, j)? - qi(2 * mi) * s(FourM, Odd, j - 1)?;
        let rhs = -qi(2 * mi - j + 1) * s(FourM, Even, j - 1)?;
        if lhs != rhs {
            second.push(j);
        }

        let lhs = qi(2 * j + 1) * s(FourMPlusTwo, Odd, j)? - qi(4 * mi + 2) * s(FourMPlusTwo, Even, j)?;
        let rhs = -qi(4 * mi - 2 * j + 3) * s(FourMPlusTwo, Odd, j - 1)?;
        if lhs != rhs {
            third.push(j);
        }

        if j < mi {
            let lhs = qi(2 * mi + 1) * s(FourM, Odd, j)? - qi(2 * mi - 2 * j) * s(FourMPlusTwo, Odd, j)?;
            let rhs = qi(2 * mi + 1) * s(FourM, Odd, j - 1)?;
            if lhs != rhs {
                fourth.push(j);
            }
        }
    }
    for (i, bad) in [first, second, third, fourth].into_iter().enumerate() {
        report.exact(format!("s_recurrence_{}/M={m:02}", i + 1), "prop_2_1_proof", bad.is_empty(), || {
            format!("recurrence {} fails at j = {bad:?}", i + 1)
        });
    }
    Ok(report)
}
