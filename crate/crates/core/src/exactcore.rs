//! Exact integer and rational primitives: binomials, factorials, Bernoulli numbers.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Rational;

/// Binomial coefficient with the convention `binom(n, k) = 0` for `k < 0` or `n < k`.
///
/// Negative `n` also yields 0; no formula in this crate evaluates that case.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// [`binom`] lifted into the rationals.
pub fn binom_q(n: i64, k: i64) -> Rational {
    Rational::from_integer(binom(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn factorial_q(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

/// `2^e` as an exact rational, `e` may be negative.
pub fn pow2_q(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `(-1)^n`.
pub fn sign_q(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Memoized prefix `B_0, B_1, ..., B_r` of the Bernoulli numbers (`B_1 = -1/2`).
///
/// Entries are produced by `sum_{j=0}^{m} binom(m+1, j) B_j = 0`.
#[derive(Clone, Debug, Default)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self { values: vec![Rational::one()] }
    }

    pub fn get(&mut self, r: usize) -> Rational {
        self.extend_to(r);
        self.values[r].clone()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn extend_to(&mut self, r: usize) {
        while self.values.len() <= r {
            let m = self.values.len();
            // odd indices past 1 vanish; skip the O(m) sum for them
            if m >= 3 && m % 2 == 1 {
                self.values.push(Rational::zero());
                continue;
            }
            let m1 = m as i64 + 1;
            let s = self
                .values
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (j, b)| acc + binom_q(m1, j as i64) * b);
            self.values.push(-s / binom_q(m1, m as i64));
        }
    }
}

fn table() -> &'static Mutex<BernoulliTable> {
    static TABLE: OnceLock<Mutex<BernoulliTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(BernoulliTable::new()))
}

/// Exact Bernoulli number `B_r`, memoized process-wide.
pub fn bernoulli(r: usize) -> Rational {
    let mut t = table().lock().unwrap_or_else(|e| e.into_inner());
    t.get(r)
}

/// Whether `x` is an integer-valued rational.
pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(2, -1), BigInt::zero());
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
        assert_eq!(binom(-3, 1), BigInt::zero());
        assert_eq!(binom(52, 5), BigInt::from(2_598_960));
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(4), BigInt::from(24));
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    /// Hand-solved recurrence: m=1 gives B_1, m=2 gives B_2, m=4 gives B_4.
    #[test]
    fn bernoulli_recurrence_by_hand() {
        // m = 1: B_0 + 2 B_1 = 0
        let b1 = -q(1, 1) / q(2, 1);
        // m = 2: B_0 + 3 B_1 + 3 B_2 = 0
        let b2 = -(q(1, 1) + q(3, 1) * &b1) / q(3, 1);
        // m = 4: B_0 + 5 B_1 + 10 B_2 + 10 B_3 + 5 B_4 = 0, B_3 = 0
        let b4 = -(q(1, 1) + q(5, 1) * &b1 + q(10, 1) * &b2) / q(5, 1);
        assert_eq!(bernoulli(1), b1);
        assert_eq!(bernoulli(2), b2);
        assert_eq!(bernoulli(4), b4);
    }

    #[test]
    fn odd_bernoulli_vanish_and_recurrence_holds() {
        let mut t = BernoulliTable::new();
        t.extend_to(60);
        for k in 1..30 {
            assert!(t.get(2 * k + 1).is_zero());
        }
        for m in 1..60usize {
            let s = (0..=m).fold(Rational::zero(), |acc, j| {
                acc + binom_q(m as i64 + 1, j as i64) * &t.values()[j]
            });
            assert!(s.is_zero(), "recurrence fails at m = {m}");
        }
    }

    #[test]
    fn concurrent_reads_agree() {
        let handles: Vec<_> = (0..4)
            .map(|i| std::thread::spawn(move || bernoulli(20 + 2 * i)))
            .collect();
        let got: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        let mut t = BernoulliTable::new();
        for (i, b) in got.iter().enumerate() {
            assert_eq!(*b, t.get(20 + 2 * i));
        }
    }

    proptest! {
        #[test]
        fn multiplicative_binom_matches_pascal(n in 0i64..60, k in -3i64..65) {
            let pascal = if k <= 0 || k >= n { binom(n, k) } else { binom(n - 1, k - 1) + binom(n - 1, k) };
            prop_assert_eq!(binom(n, k), pascal);
        }

        #[test]
        fn shifted_binomial_ratio(k in 1i64..40, j_off in 0i64..40) {
            let j = 1 + j_off % k;
            let lhs = binom(2 * k - 2, k - 1 - j) * (2 * k * (2 * k - 1));
            let rhs = binom(2 * k, k - j) * (k * k - j * j);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn alternating_half_sum(k in 1i64..60) {
            let s = (0..k).fold(BigInt::zero(), |acc, j| {
                let t = binom(2 * k, j);
                if j % 2 == 0 { acc + t } else { acc - t }
            });
            let rhs = binom(2 * k, k) * if (k + 1) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(s * 2, rhs);
        }
    }
}
