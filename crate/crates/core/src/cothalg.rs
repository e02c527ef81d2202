//! Polynomials in a formal variable `c` with the derivation `c' = 1 − c²`.
//!
//! The rule is shared by `coth` and `tanh`, so one algebra covers both basis
//! families:
//!
//! * coth kind: `C_k = c(c² − 1)^k`, standing for `cosh(x)/sinh(x)^{2k+1}`
//! * tanh kind: `T_k = t(1 − t²)^k`, standing for `sinh(x)/cosh(x)^{2k+1}`

use num_traits::Zero;
use thiserror::Error;

use crate::coeffs::CTable;
use crate::exactcore::{factorial_q, pow2_q, q};
use crate::report::IdentityReport;
use crate::scalar::Field;
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CothAlgError {
    #[error("polynomial has even-degree terms; only odd polynomials expand in the basis")]
    NotOdd,
}

/// Dense polynomial in `c`, index = degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly<T> {
    coeffs: Vec<T>,
}

/// A [`CPoly`] known to contain only odd powers.
pub type OddPoly<T> = CPoly<T>;

impl<T: Field> CPoly<T> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// The variable `c` itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, deg: usize) -> Self {
        let mut v = vec![T::zero(); deg + 1];
        v[deg] = c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> T {
        self.coeffs.get(d).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_coeffs(vec![T::one()]), |acc, _| acc.mul(self))
    }

    /// Formal derivative under `c' = 1 − c²`: `(c^m)' = m c^{m−1} − m c^{m+1}`.
    pub fn derive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (m, a) in self.coeffs.iter().enumerate().skip(1) {
            let am = a.clone() * T::from_i64(m as i64);
            out[m - 1] = out[m - 1].clone() + am.clone();
            out[m + 1] = out[m + 1].clone() - am;
        }
        Self::from_coeffs(out)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derive())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

pub fn derive<T: Field>(p: &CPoly<T>) -> CPoly<T> {
    p.derive()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Coth,
    Tanh,
}

/// Coefficients `b_k` of `Σ b_k · basis_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisVector<T> {
    pub kind: BasisKind,
    pub coeffs: Vec<T>,
}

impl<T: Field> BasisVector<T> {
    pub fn zero(kind: BasisKind) -> Self {
        Self { kind, coeffs: Vec::new() }
    }

    pub fn unit(kind: BasisKind, k: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self { kind, coeffs }
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.kind, other.kind);
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), T::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.clone() + b.clone();
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { kind: self.kind, coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    pub fn to_poly(&self) -> CPoly<T> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(CPoly::zero(), |acc, (k, c)| acc.add(&basis_to_poly::<T>(k as u32, self.kind).scale(c)))
    }

    /// Second derivative computed in the basis:
    /// `C_k'' = 4k² C_k + (2k+2)(2k+1) C_{k+1}` and
    /// `T_k'' = 4k² T_k − (2k+2)(2k+1) T_{k+1}`.
    pub fn second_derivative(&self) -> Self {
        let sign = match self.kind {
            BasisKind::Coth => T::one(),
            BasisKind::Tanh => -T::one(),
        };
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (k, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ki = k as i64;
            out[k] = out[k].clone() + b.clone() * T::from_i64(4 * ki * ki);
            out[k + 1] = out[k + 1].clone() + b.clone() * T::from_i64((2 * ki + 2) * (2 * ki + 1)) * sign.clone();
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        Self { kind: self.kind, coeffs: out }
    }
}

/// `c(c² − 1)^k` (coth kind) or `t(1 − t²)^k` (tanh kind).
pub fn basis_to_poly<T: Field>(k: u32, kind: BasisKind) -> CPoly<T> {
    let sq = match kind {
        BasisKind::Coth => CPoly::from_coeffs(vec![-T::one(), T::zero(), T::one()]),
        BasisKind::Tanh => CPoly::from_coeffs(vec![T::one(), T::zero(), -T::one()]),
    };
    CPoly::var().mul(&sq.pow(k))
}

/// Expands an odd polynomial in the chosen basis, eliminating from the top degree down.
pub fn poly_to_basis<T: Field>(p: &CPoly<T>, kind: BasisKind) -> Result<BasisVector<T>, CothAlgError> {
    if !p.is_odd() {
        return Err(CothAlgError::NotOdd);
    }
    let Some(deg) = p.degree() else {
        return Ok(BasisVector::zero(kind));
    };
    let top = (deg - 1) / 2;
    let mut rest = p.clone();
    let mut coeffs = vec![T::zero(); top + 1];
    for k in (0..=top).rev() {
        let lead = rest.coeff(2 * k + 1);
        if lead.is_zero() {
            continue;
        }
        // basis_k has leading coefficient 1 (coth) or (−1)^k (tanh)
        let b = match kind {
            BasisKind::Tanh if k % 2 == 1 => -lead,
            _ => lead,
        };
        rest = rest.sub(&basis_to_poly::<T>(k as u32, kind).scale(&b));
        coeffs[k] = b;
    }
    debug_assert!(rest.is_zero());
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(BasisVector { kind, coeffs })
}

/// Checks `d^{2n}/dx^{2n} coth = Σ_k c_{n,k} C_k` for `n = 1..=n_max` twice:
/// once by expanding the right side as a polynomial, once by re-deriving the
/// coefficients with [`poly_to_basis`].
pub fn verify_lemma22(n_max: usize, table: &CTable) -> IdentityReport {
    let mut report = IdentityReport::new("coth even derivatives");
    let mut p = CPoly::<Rational>::var();
    for n in 1..=n_max.min(table.n_max()) {
        p = p.derive().derive();
        let claimed = BasisVector {
            kind: BasisKind::Coth,
            coeffs: (0..=n).map(|k| if k == 0 { Rational::zero() } else { table.get(n, k).clone() }).collect(),
        };
        let expanded = claimed.to_poly();
        report.exact(format!("coth_derivative_expansion/n={n:02}"), "definition_of_c_n_k", expanded == p, || {
            format!("polynomial mismatch at n = {n}")
        });

        let extracted = poly_to_basis(&p, BasisKind::Coth).expect("even derivatives of coth are odd");
        let bad: Vec<usize> = (0..=n.max(extracted.coeffs.len()))
            .filter(|&k| extracted.coeff(k) != claimed.coeff(k))
            .collect();
        report.exact(format!("coth_derivative_basis/n={n:02}"), "c_n_k_recurrence", bad.is_empty(), || {
            format!("(n, k) mismatches: {:?}", bad.iter().map(|k| (n, *k)).collect::<Vec<_>>())
        });
        report.exact(
            format!("coth_derivative_leading/n={n:02}"),
            "c_n_k_recurrence",
            extracted.coeff(n) == factorial_q(2 * n as u64),
            || format!("leading coefficient {} != (2n)!", extracted.coeff(n)),
        );
    }
    report
}

/// Both sides of the differentiated identity
/// `Σ_{k≥1} k(k+1)/2^k · T_{k+1}(x) = 4 T_1(2x)`, after `2N` derivatives in `x`.
///
/// The left side is truncated at `k_max`; the right side is exact and expressed
/// in the basis of the variable `u = tanh(2x)` (chain rule factor `2^{2N}`).
#[derive(Clone, Debug)]
pub struct TanhFamilySides {
    pub n: u32,
    pub k_max: u32,
    /// `(k, 2N-th derivative of k(k+1)/2^k · T_{k+1})`, `k = 1..=k_max`.
    pub lhs_terms: Vec<(u32, BasisVector<Rational>)>,
    pub lhs_total: BasisVector<Rational>,
    pub rhs: BasisVector<Rational>,
}

pub fn tanh_family_sides(n: u32, k_max: u32) -> TanhFamilySides {
    let differentiate = |mut v: BasisVector<Rational>| {
        for _ in 0..n {
            v = v.second_derivative();
        }
        v
    };
    let mut lhs_total = BasisVector::zero(BasisKind::Tanh);
    let lhs_terms: Vec<_> = (1..=k_max)
        .map(|k| {
            let ki = k as i64;
            let w = q(ki * (ki + 1), 1) * pow2_q(-ki);
            let v = differentiate(BasisVector::unit(BasisKind::Tanh, k as usize + 1, w));
            lhs_total.add_assign(&v);
            (k, v)
        })
        .collect();
    let rhs = differentiate(BasisVector::unit(BasisKind::Tanh, 1, q(4, 1))).scale(&pow2_q(2 * n as i64));
    TanhFamilySides { n, k_max, lhs_terms, lhs_total, rhs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::build_c;

    type P = CPoly<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_coeffs(c.iter().map(|&v| q(v, 1)).collect())
    }

    #[test]
    fn derive_examples() {
        assert_eq!(P::var().derive(), p(&[1, 0, -1]));
        assert_eq!(P::monomial(q(1, 1), 2).derive(), p(&[0, 2, 0, -2]));
        assert_eq!(P::var().derive().derive(), p(&[0, -2, 0, 2]));
    }

    #[test]
    fn basis_examples() {
        assert_eq!(basis_to_poly::<Rational>(0, BasisKind::Coth), p(&[0, 1]));
        assert_eq!(basis_to_poly::<Rational>(1, BasisKind::Coth), p(&[0, -1, 0, 1]));
        assert_eq!(basis_to_poly::<Rational>(2, BasisKind::Coth), p(&[0, 1, 0, -2, 0, 1]));
    }

    #[test]
    fn poly_to_basis_examples() {
        let c3 = P::monomial(q(1, 1), 3);
        assert_eq!(poly_to_basis(&c3, BasisKind::Coth).unwrap().coeffs, vec![q(1, 1), q(1, 1)]);
        assert_eq!(poly_to_basis(&c3, BasisKind::Tanh).unwrap().coeffs, vec![q(1, 1), q(-1, 1)]);
        assert_eq!(poly_to_basis(&p(&[1, 1]), BasisKind::Coth), Err(CothAlgError::NotOdd));
        assert_eq!(poly_to_basis(&P::zero(), BasisKind::Tanh).unwrap().coeffs, Vec::<Rational>::new());
    }

    #[test]
    fn basis_round_trip_unit_vectors() {
        for kind in [BasisKind::Coth, BasisKind::Tanh] {
            for k in 0..=30u32 {
                let v = poly_to_basis(&basis_to_poly::<Rational>(k, kind), kind).unwrap();
                assert_eq!(v, BasisVector::unit(kind, k as usize, q(1, 1)));
            }
        }
    }

    #[test]
    fn parity_alternates() {
        let mut d = P::var();
        for i in 1..=40 {
            d = d.derive();
            if i % 2 == 0 {
                assert!(d.is_odd());
            } else {
                assert!(d.is_even());
            }
        }
    }

    #[test]
    fn coth_derivative_examples() {
        let d2 = P::var().nth_derivative(2);
        assert_eq!(d2, basis_to_poly::<Rational>(1, BasisKind::Coth).scale(&q(2, 1)));
        let d4 = P::var().nth_derivative(4);
        assert_eq!(d4, p(&[0, 16, 0, -40, 0, 24]));
        assert_eq!(poly_to_basis(&d4, BasisKind::Coth).unwrap().coeffs, vec![q(0, 1), q(8, 1), q(24, 1)]);
    }

    #[test]
    fn second_derivative_rule_matches_polynomial_route() {
        for kind in [BasisKind::Coth, BasisKind::Tanh] {
            for k in 0..=20usize {
                let v = BasisVector::unit(kind, k, q(1, 1));
                let by_rule = v.second_derivative().to_poly();
                let by_poly = basis_to_poly::<Rational>(k as u32, kind).derive().derive();
                assert_eq!(by_rule, by_poly, "{kind:?} k={k}");
            }
        }
    }

    #[test]
    fn coth_derivatives_hold_to_twenty() {
        let table = build_c(20).unwrap();
        let r = verify_lemma22(20, &table);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn tanh_family_zeroth_member() {
        let s = tanh_family_sides(0, 5);
        // k = 1 term: (1·2/2) T_2
        assert_eq!(s.lhs_terms[0].1, BasisVector::unit(BasisKind::Tanh, 2, q(1, 1)));
        assert_eq!(s.lhs_total.coeff(2), q(1, 1));
        assert_eq!(s.lhs_total.coeff(3), q(6, 4));
        assert_eq!(s.rhs, BasisVector::unit(BasisKind::Tanh, 1, q(4, 1)));
    }

    #[test]
    fn tanh_family_first_member_parity() {
        let s = tanh_family_sides(1, 4);
        // derivatives of odd polynomials stay odd after two steps; one more step is even
        for (_, v) in &s.lhs_terms {
            let poly = v.to_poly();
            assert!(poly.is_odd());
            assert!(poly.derive().is_even());
        }
        // 4·4·(4 T_1 − 12 T_2)
        assert_eq!(s.rhs.coeffs, vec![q(0, 1), q(64, 1), q(-192, 1)]);
    }

    #[test]
    fn tanh_identity_holds_in_f64_at_sample_point() {
        // Σ k(k+1)/2^k T_{k+1}(x) = 4 T_1(2x) with T_k = t(1−t²)^k
        let x: f64 = 0.7;
        let t = x.tanh();
        let lhs: f64 = (1..200)
            .map(|k| {
                let k = k as f64;
                k * (k + 1.0) / 2f64.powf(k) * t * (1.0 - t * t).powf(k + 1.0)
            })
            .sum();
        let u = (2.0 * x).tanh();
        assert!((lhs - 4.0 * u * (1.0 - u * u)).abs() < 1e-14);
    }
}
