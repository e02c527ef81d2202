//! Exact coefficient tables for the even derivatives of `coth` and their inverses.
//!
//! * `c_{n,k}`: `d^{2n}/dx^{2n} coth(x) = Σ_k c_{n,k} cosh(x)/sinh(x)^{2k+1}`
//! * `u_{n,k} = (−1)^n c_{n,k} / (2n)!`, `V = U^{-1}`
//! * `h_{k,n}`: nested harmonic-type sums giving `V` in closed form
//! * `L`, `D`: the doubling matrices with `UL = DU` and `LV = VD`
//! * `r_k(N)`: the weights of `ζ(2k+1)/π^{2k}` in the small-α limit

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactcore::{binom, binom_q, factorial_q, pow2_q, q, sign_q};
use crate::matrix::Matrix;
use crate::report::IdentityReport;
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoeffError {
    #[error("table size must be at least 1")]
    EmptyTable,
    #[error("{table}: independent constructions disagree at ({row}, {col})")]
    RouteMismatch { table: &'static str, row: usize, col: usize },
}

/// `c_{n,k}` for `0 ≤ n ≤ n_max`, `1 ≤ k ≤ n_max`. Row 0 is the extension
/// `c_{0,k} = (−1)^{k+1} binom(2k,k) / 4^k`, which is not triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct CTable {
    n_max: usize,
    rows: Vec<Vec<Rational>>,
}

impl CTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `c_{n,k}`; `k = 0` is the zero padding used by the recurrence.
    pub fn get(&self, n: usize, k: usize) -> &Rational {
        &self.rows[n][k]
    }
}

/// `c_{n,k} = 2/4^k Σ_{j=1}^{k} (−1)^{k−j} binom(2k, k−j) (2j)^{2n}`.
pub fn c_closed_form(n: usize, k: usize) -> Rational {
    let ki = k as i64;
    let s = (1..=ki).fold(num_bigint::BigInt::zero(), |acc, j| {
        let t = binom(2 * ki, ki - j) * num_traits::pow(num_bigint::BigInt::from(2 * j), 2 * n);
        if (ki - j) % 2 == 0 {
            acc + t
        } else {
            acc - t
        }
    });
    Rational::from_integer(s * 2) * pow2_q(-2 * ki)
}

/// `c_{0,k} = (−1)^{k+1} binom(2k,k) / 4^k`.
pub fn c_row_zero(k: usize) -> Rational {
    let ki = k as i64;
    sign_q(ki + 1) * binom_q(2 * ki, ki) * pow2_q(-2 * ki)
}

/// Builds `c_{n,k}` by the closed form and by the recurrence
/// `c_{n,k} = 2k(2k−1) c_{n−1,k−1} + 4k² c_{n−1,k}` started from row 0,
/// and requires exact agreement.
pub fn build_c(n_max: usize) -> Result<CTable, CoeffError> {
    if n_max == 0 {
        return Err(CoeffError::EmptyTable);
    }
    let closed: Vec<Vec<Rational>> = (0..=n_max)
        .map(|n| (0..=n_max).map(|k| if k == 0 { Rational::zero() } else { c_closed_form(n, k) }).collect())
        .collect();

    let mut rec: Vec<Vec<Rational>> = Vec::with_capacity(n_max + 1);
    rec.push((0..=n_max).map(|k| if k == 0 { Rational::zero() } else { c_row_zero(k) }).collect());
    for n in 1..=n_max {
        let prev = &rec[n - 1];
        let row = (0..=n_max)
            .map(|k| {
                if k == 0 {
                    return Rational::zero();
                }
                let ki = k as i64;
                q(2 * ki * (2 * ki - 1), 1) * &prev[k - 1] + q(4 * ki * ki, 1) * &prev[k]
            })
            .collect();
        rec.push(row);
    }

    for n in 0..=n_max {
        for k in 1..=n_max {
            if closed[n][k] != rec[n][k] {
                return Err(CoeffError::RouteMismatch { table: "c", row: n, col: k });
            }
        }
    }
    Ok(CTable { n_max, rows: closed })
}

/// `h_{k,n}` for `1 ≤ k ≤ k_max`, `1 ≤ n ≤ n_max`:
/// `h_{1,n} = 1`, `h_{k,n} = Σ_{j=k−1}^{n−1} h_{k−1,j} / j²`.
#[derive(Clone, Debug, PartialEq)]
pub struct HTable {
    k_max: usize,
    n_max: usize,
    vals: Vec<Vec<Rational>>,
}

impl HTable {
    pub fn build(k_max: usize, n_max: usize) -> Self {
        let mut vals = vec![vec![Rational::zero(); n_max + 1]; k_max + 1];
        for n in 1..=n_max {
            vals[1][n] = Rational::one();
        }
        // h_{k,n} = h_{k,n−1} + h_{k−1,n−1}/(n−1)², a running form of the defining sum
        for k in 2..=k_max {
            for n in k..=n_max {
                let j = (n - 1) as i64;
                let step = &vals[k - 1][n - 1] * q(1, j * j);
                vals[k][n] = &vals[k][n - 1] + step;
            }
        }
        Self { k_max, n_max, vals }
    }

    pub fn get(&self, k: usize, n: usize) -> &Rational {
        &self.vals[k][n]
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }
}

/// `u_{n,k} = (−1)^n c_{n,k} / (2n)!` for `1 ≤ n, k ≤ n_max`; checks the row recurrence
/// `u_{n,k} = −2k(2k−1)/(2n(2n−1)) u_{n−1,k−1} − 4k²/(2n(2n−1)) u_{n−1,k}`.
pub fn build_u(c: &CTable) -> Result<Matrix<Rational>, CoeffError> {
    let n_max = c.n_max();
    let u = Matrix::from_fn(n_max, |n, k| {
        sign_q(n as i64) * c.get(n, k) / factorial_q(2 * n as u64)
    });
    for n in 2..=n_max {
        let ni = n as i64;
        let den = 2 * ni * (2 * ni - 1);
        for k in 1..=n_max {
            let ki = k as i64;
            let prev_left = if k == 1 { Rational::zero() } else { u.get(n - 1, k - 1).clone() };
            let expect = -q(2 * ki * (2 * ki - 1), den) * prev_left - q(4 * ki * ki, den) * u.get(n - 1, k);
            if &expect != u.get(n, k) {
                return Err(CoeffError::RouteMismatch { table: "U", row: n, col: k });
            }
        }
    }
    Ok(u)
}

/// `v_{n,k} = −2k(2k−1)/(2n(2n−1)) v_{n−1,k−1} − 4(n−1)²/(2n(2n−1)) v_{n−1,k}`, seeded by `v_{0,0} = 1`.
pub fn v_by_recurrence(n_max: usize) -> Matrix<Rational> {
    let mut prev = vec![Rational::zero(); n_max + 1];
    prev[0] = Rational::one();
    let mut v = Matrix::zeros(n_max);
    for n in 1..=n_max {
        let ni = n as i64;
        let den = 2 * ni * (2 * ni - 1);
        let mut row = vec![Rational::zero(); n_max + 1];
        for k in 1..=n {
            let ki = k as i64;
            row[k] = -q(2 * ki * (2 * ki - 1), den) * &prev[k - 1] - q(4 * (ni - 1) * (ni - 1), den) * &prev[k];
            v.set(n, k, row[k].clone());
        }
        prev = row;
    }
    v
}

/// `v_{n,k} = (−1)^n (2k)! 2^{2(n−k)} h_{k,n} / (n² binom(2n, n))`.
pub fn v_closed_form(h: &HTable, n_max: usize) -> Matrix<Rational> {
    Matrix::from_fn(n_max, |n, k| {
        if k > n {
            return Rational::zero();
        }
        let ni = n as i64;
        sign_q(ni) * factorial_q(2 * k as u64) * pow2_q(2 * (ni - k as i64)) * h.get(k, n)
            / (binom_q(2 * ni, ni) * q(ni * ni, 1))
    })
}

/// Builds `V` by recurrence, closed form and inversion of `U`; all three must agree.
pub fn build_v(u: &Matrix<Rational>, h: &HTable) -> Result<Matrix<Rational>, CoeffError> {
    let n_max = u.size();
    let by_rec = v_by_recurrence(n_max);
    let by_closed = v_closed_form(h, n_max);
    let by_inverse = u
        .invert_lower_triangular()
        .map_err(|e| CoeffError::RouteMismatch { table: "U (singular)", row: e.row, col: e.row })?;
    if let Some((i, j)) = by_rec.first_difference(&by_closed) {
        return Err(CoeffError::RouteMismatch { table: "V recurrence vs closed form", row: i, col: j });
    }
    if let Some((i, j)) = by_rec.first_difference(&by_inverse) {
        return Err(CoeffError::RouteMismatch { table: "V recurrence vs inverse of U", row: i, col: j });
    }
    Ok(by_closed)
}

/// `l_{n,k} = 2^{2k+1} binom(k, n−k)` for `k ≤ n ≤ min(2k, n_max)`, else 0.
pub fn build_l(n_max: usize) -> Matrix<Rational> {
    Matrix::from_fn(n_max, |n, k| {
        if k <= n && n <= (2 * k).min(n_max) {
            pow2_q(2 * k as i64 + 1) * binom_q(k as i64, (n - k) as i64)
        } else {
            Rational::zero()
        }
    })
}

/// `d_{i,i} = 2^{2i+1}`.
pub fn build_d(n_max: usize) -> Matrix<Rational> {
    Matrix::from_fn(n_max, |i, j| if i == j { pow2_q(2 * i as i64 + 1) } else { Rational::zero() })
}

#[derive(Clone, Debug)]
pub struct CoeffTables {
    pub n_max: usize,
    pub c: CTable,
    pub h: HTable,
    pub u: Matrix<Rational>,
    pub v: Matrix<Rational>,
    pub l: Matrix<Rational>,
    pub d: Matrix<Rational>,
}

impl CoeffTables {
    pub fn build(n_max: usize) -> Result<Self, CoeffError> {
        let c = build_c(n_max)?;
        let h = HTable::build(n_max, n_max);
        let u = build_u(&c)?;
        let v = build_v(&u, &h)?;
        Ok(Self { n_max, c, h, u, v, l: build_l(n_max), d: build_d(n_max) })
    }
}

/// Boundary values and shape of every table.
pub fn check_table_invariants(t: &CoeffTables) -> IdentityReport {
    let n_max = t.n_max;
    let mut r = IdentityReport::new("table invariants");
    let bad: Vec<usize> = (1..=n_max).filter(|&n| *t.c.get(n, n) != factorial_q(2 * n as u64)).collect();
    r.exact("c_diagonal_is_factorial", "c_n_k_recurrence", bad.is_empty(), || format!("rows {bad:?}"));
    let bad: Vec<usize> = (1..=n_max).filter(|&n| *t.c.get(n, 1) != pow2_q(2 * n as i64 - 1)).collect();
    r.exact("c_first_column_half_power_of_four", "c_n_k_recurrence", bad.is_empty(), || format!("rows {bad:?}"));
    let bad: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|n| (n + 1..=n_max).map(move |k| (n, k)))
        .filter(|&(n, k)| n >= 1 && !t.c.get(n, k).is_zero())
        .collect();
    r.exact("c_vanishes_above_diagonal", "definition_of_c_n_k", bad.is_empty(), || format!("{bad:?}"));
    let bad: Vec<usize> = (2..=n_max).filter(|&k| !t.c.get(1, k).is_zero()).collect();
    r.exact("c_row_one_from_row_zero", "definition_of_c_n_k", bad.is_empty(), || format!("{bad:?}"));
    r.exact("u_lower_triangular", "definition_of_U", t.u.is_lower_triangular(), String::new);
    r.exact("v_lower_triangular", "definition_of_V", t.v.is_lower_triangular(), String::new);
    let bad: Vec<usize> = (1..=n_max).filter(|&n| *t.v.get(n, n) != sign_q(n as i64)).collect();
    r.exact("v_diagonal_alternating_sign", "definition_of_V", bad.is_empty(), || format!("rows {bad:?}"));
    let d_ok = (1..=n_max).all(|i| {
        (1..=n_max).all(|j| {
            let e = t.d.get(i, j);
            if i == j {
                *e == pow2_q(2 * i as i64 + 1)
            } else {
                e.is_zero()
            }
        })
    });
    r.exact("d_diagonal_powers_of_two", "prop_2_6", d_ok, String::new);
    r
}

/// `Σ_{i=k}^{n} binom(k, i−k) c_{n,i} = 2^{2(n−k)} c_{n,k}`, plus the auxiliary
/// `a_{n,1} = 2^{4n−3}` and `a_{n,k} = 2k(2k−1) a_{n−1,k−1} + 16k² a_{n−1,k}`.
pub fn check_binomial_recurrence(t: &CoeffTables) -> IdentityReport {
    let n_max = t.n_max;
    let a = |n: usize, k: usize| -> Rational {
        if k == 0 || k > n {
            return Rational::zero();
        }
        (k..=n).fold(Rational::zero(), |acc, i| acc + binom_q(k as i64, (i - k) as i64) * t.c.get(n, i))
    };
    let mut r = IdentityReport::new("binomial recurrence");
    let mut bad = Vec::new();
    let mut bad_a1 = Vec::new();
    let mut bad_rec = Vec::new();
    for n in 1..=n_max {
        for k in 1..=n {
            let b = pow2_q(2 * (n - k) as i64) * t.c.get(n, k);
            let ank = a(n, k);
            if ank != b {
                bad.push((n, k));
            }
            if n >= 2 {
                let ki = k as i64;
                let rec = q(2 * ki * (2 * ki - 1), 1) * a(n - 1, k - 1) + q(16 * ki * ki, 1) * a(n - 1, k);
                if rec != ank {
                    bad_rec.push((n, k));
                }
            }
        }
        if a(n, 1) != pow2_q(4 * n as i64 - 3) {
            bad_a1.push(n);
        }
    }
    r.exact(format!("binomial_weighted_row_sum/n<={n_max}"), "c_n_k_binomial_recurrence", bad.is_empty(), || {
        format!("(n, k) = {bad:?}")
    });
    r.exact(format!("a_first_column/n<={n_max}"), "c_n_k_binomial_recurrence", bad_a1.is_empty(), || {
        format!("n = {bad_a1:?}")
    });
    r.exact(format!("a_recurrence/n<={n_max}"), "a_n_k_recurrence", bad_rec.is_empty(), || {
        format!("(n, k) = {bad_rec:?}")
    });
    r
}

/// `UV = I`, `VU = I`, `UL = DU`, `LV = VD`, and the two written-out row families of `LV = VD`.
pub fn check_matrix_identities(t: &CoeffTables) -> IdentityReport {
    let n = t.n_max;
    let id = Matrix::identity(n);
    let mut r = IdentityReport::new("matrix identities");
    let mut matrix_check = |name: &str, label: &str, lhs: Matrix<Rational>, rhs: &Matrix<Rational>| {
        let diff = lhs.first_difference(rhs);
        r.exact(format!("{name}/n_max={n}"), label, diff.is_none(), || format!("first differing entry {diff:?}"));
    };
    matrix_check("UV=I", "v_recurrence", t.u.mul(&t.v), &id);
    matrix_check("VU=I", "v_recurrence", t.v.mul(&t.u), &id);
    matrix_check("UL=DU", "prop_2_6", t.u.mul(&t.l), &t.d.mul(&t.u));
    matrix_check("LV=VD", "prop_2_6", t.l.mul(&t.v), &t.v.mul(&t.d));

    let mut bad_odd = Vec::new();
    let mut bad_even = Vec::new();
    for m in 1..=n.div_ceil(2) {
        let mi = m as i64;
        let row = 2 * m - 1;
        for j in 1..=row {
            let lhs = (0..mi).fold(Rational::zero(), |acc, k| {
                acc + pow2_q(2 * (mi + k) + 1) * q(mi - k, 2 * k + 1) * binom_q(mi + k, 2 * k)
                    * t.v.get((mi + k) as usize, j)
            });
            if lhs != pow2_q(2 * j as i64 + 1) * t.v.get(row, j) {
                bad_odd.push((m, j));
            }
        }
    }
    for m in 1..=n / 2 {
        let mi = m as i64;
        let row = 2 * m;
        for j in 1..=row {
            let lhs = (0..=mi).fold(Rational::zero(), |acc, k| {
                acc + pow2_q(2 * (mi + k) + 1) * binom_q(mi + k, 2 * k) * t.v.get((mi + k) as usize, j)
            });
            if lhs != pow2_q(2 * j as i64 + 1) * t.v.get(row, j) {
                bad_even.push((m, j));
            }
        }
    }
    r.exact(format!("V_odd_rows/n_max={n}"), "V_odd_row_of_L", bad_odd.is_empty(), || format!("(M, j) = {bad_odd:?}"));
    r.exact(format!("V_even_rows/n_max={n}"), "V_even_row_of_L", bad_even.is_empty(), || {
        format!("(M, j) = {bad_even:?}")
    });
    r
}

/// Exact weights `r_k(N)` with
/// `lim_{α→0+} Σ_n (1/n) sinh(αn)/cosh(αn)^{2N+1} = Σ_{k=1}^{N} r_k ζ(2k+1)/π^{2k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitCoeffs {
    pub n: usize,
    /// `r[k-1] = r_k`.
    pub r: Vec<Rational>,
}

impl LimitCoeffs {
    /// `r_k = (2k)! (2^{2N+1} − 2^{2(N−k)}) h_{k,N} / (N² binom(2N, N))`.
    pub fn from_h(h: &HTable, n: usize) -> Self {
        assert!(n >= 1 && n <= h.n_max() && n <= h.k_max(), "h table too small for N = {n}");
        let ni = n as i64;
        let scale = Rational::one() / (binom_q(2 * ni, ni) * q(ni * ni, 1));
        let r = (1..=n)
            .map(|k| {
                let ki = k as i64;
                factorial_q(2 * k as u64) * (pow2_q(2 * ni + 1) - pow2_q(2 * (ni - ki))) * h.get(k, n) * &scale
            })
            .collect();
        Self { n, r }
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.r[k - 1]
    }

    pub fn all_positive(&self) -> bool {
        self.r.iter().all(|x| x.is_positive())
    }
}

pub fn limit_coeffs(n: usize) -> LimitCoeffs {
    LimitCoeffs::from_h(&HTable::build(n, n), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_examples() {
        let t = build_c(6).unwrap();
        assert_eq!(*t.get(1, 1), q(2, 1));
        for n in 1..=6 {
            assert_eq!(*t.get(n, n), factorial_q(2 * n as u64));
        }
        assert_eq!(*t.get(0, 2), q(-3, 8));
        assert_eq!(*t.get(2, 1), q(8, 1));
        assert_eq!(*t.get(2, 2), q(24, 1));
        assert_eq!(c_row_zero(2), c_closed_form(0, 2));
    }

    #[test]
    fn c_rejects_empty() {
        assert_eq!(build_c(0), Err(CoeffError::EmptyTable));
    }

    #[test]
    fn u_examples() {
        let u = build_u(&build_c(2).unwrap()).unwrap();
        assert_eq!(*u.get(1, 1), q(-1, 1));
        assert_eq!(*u.get(2, 1), q(1, 3));
        assert_eq!(*u.get(2, 2), q(1, 1));
    }

    #[test]
    fn h_examples_and_definition() {
        let h = HTable::build(6, 12);
        assert_eq!(*h.get(2, 3), q(5, 4));
        assert_eq!(*h.get(1, 7), q(1, 1));
        // direct defining sum
        for k in 2..=6usize {
            for n in 1..=12usize {
                let direct = (k - 1..n).fold(Rational::zero(), |acc, j| {
                    acc + h.get(k - 1, j) * q(1, (j * j) as i64)
                });
                assert_eq!(*h.get(k, n), direct, "h_{{{k},{n}}}");
            }
        }
    }

    #[test]
    fn v_examples() {
        let t = CoeffTables::build(8).unwrap();
        assert_eq!(*t.v.get(1, 1), q(-1, 1));
        for n in 1..=8 {
            assert_eq!(*t.v.get(n, n), sign_q(n as i64));
        }
    }

    #[test]
    fn small_matrix_relation_by_hand() {
        let t = CoeffTables::build(2).unwrap();
        let ul = t.u.mul(&t.l);
        let du = t.d.mul(&t.u);
        assert_eq!(*ul.get(2, 1), q(32, 3));
        assert_eq!(*du.get(2, 1), q(32, 3));
    }

    #[test]
    fn identities_and_invariants_hold() {
        let t = CoeffTables::build(12).unwrap();
        for rep in [check_table_invariants(&t), check_binomial_recurrence(&t), check_matrix_identities(&t)] {
            assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn binomial_recurrence_n2_k1() {
        let t = build_c(2).unwrap();
        assert_eq!(t.get(2, 1) + t.get(2, 2), q(32, 1));
        assert_eq!(q(4, 1) * t.get(2, 1), q(32, 1));
    }

    #[test]
    fn limit_coefficient_examples() {
        assert_eq!(limit_coeffs(1).r, vec![q(7, 1)]);
        assert_eq!(limit_coeffs(2).r, vec![q(7, 3), q(31, 1)]);
        for n in 1..=10 {
            assert!(limit_coeffs(n).all_positive());
        }
    }

    #[test]
    fn v_written_out_single_term() {
        // M = 1, j = 1: 2³ · 1 · binom(1,0) · v_{1,1} = 2³ · v_{1,1}
        let t = CoeffTables::build(1).unwrap();
        let lhs = pow2_q(3) * q(1, 1) * binom_q(1, 0) * t.v.get(1, 1);
        assert_eq!(lhs, pow2_q(3) * t.v.get(1, 1));
    }
}
