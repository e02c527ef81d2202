//! Numerical certificates for the small-α limits, the odd-zeta recurrences
//! derived from them, and the series identities they rest on.
//!
//! Every routine takes a nominal precision `p`; work is carried out at
//! `p + GUARD_BITS` and values that should agree exactly are compared against
//! the rounding floor `2^{−p+GUARD_BITS}`.
//!
//! The α-sums are Riemann sums `Σ_n α g(αn)` of an even function with
//! `g(0) = 1`, so `sum(α) = limit − α/2 + O(e^{−c/α})`. Certificates report the
//! plain residual `|sum − limit|` and the endpoint-corrected residual
//! `|sum + α/2 − limit|`; the verdict uses the corrected one.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coeffs::limit_coeffs;
use crate::cothalg::tanh_family_sides;
use crate::exactcore::{binom_q, factorial_q, pow2_q, q};
use crate::report::{CheckRecord, IdentityReport};
use crate::scalar::{rational_string, Real};
use crate::zetanum::{
    cor32_sides, lambert_sum, ramanujan_sides, zeta_int, Cor32Parity, SeriesError, DEFAULT_MAX_TERMS, GUARD_BITS,
};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdentityError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("schedule must be non-empty, positive and strictly decreasing")]
    Schedule,
    #[error("{0}")]
    Argument(String),
}

fn working(p: u32) -> u32 {
    p + GUARD_BITS
}

/// `2^{−p+GUARD_BITS}`, the agreement expected from identities that hold exactly.
pub fn rounding_floor<T: Real>(p: u32) -> T {
    T::pow2(-(p as i64) + GUARD_BITS as i64, working(p))
}

fn sci<T: Real>(x: &T) -> String {
    x.to_sci(6)
}

/// `α_j = 2^{−j}`, `j = 0..=4`.
pub fn default_schedule() -> Vec<Rational> {
    (0..=4).map(|j| pow2_q(-j)).collect()
}

/// `1, 1/2, 1/4, …` down to `alpha_min`, which is appended if it is not itself a power of two.
pub fn schedule_down_to(alpha_min: &Rational) -> Result<Vec<Rational>, IdentityError> {
    if !alpha_min.is_positive() {
        return Err(IdentityError::Schedule);
    }
    let mut out = Vec::new();
    let mut a = Rational::one();
    while &a >= alpha_min {
        out.push(a.clone());
        a /= q(2, 1);
    }
    if out.last() != Some(alpha_min) {
        out.push(alpha_min.clone());
    }
    Ok(out)
}

/// `Σ_k coeffs[k−1] ζ(2k+1)/π^{2k}`.
pub fn zeta_combination<T: Real>(coeffs: &[Rational], prec: u32) -> Result<T, IdentityError> {
    let pi2 = T::pi(prec).powi(2);
    let mut acc = T::int(0, prec);
    let mut pi_pow = T::one();
    for (i, c) in coeffs.iter().enumerate() {
        let k = i as i64 + 1;
        pi_pow = pi_pow * &pi2;
        if c.is_zero() {
            continue;
        }
        acc = acc + T::from_rational(c, prec) * zeta_int::<T>(2 * k + 1, prec)? / &pi_pow;
    }
    Ok(acc)
}

/// A small-α certificate for `(1/α^K) Σ_n n^{−(K+1)} sinh(αn)^{1+K}/cosh(αn)^{2M+1+K}`.
#[derive(Clone, Debug)]
pub struct LimitCertificate<T> {
    pub k: u32,
    pub m: u32,
    pub schedule: Vec<Rational>,
    pub values: Vec<T>,
    /// `|sum(α) − target|`.
    pub residuals: Vec<T>,
    /// `|sum(α) + α/2 − target|`.
    pub corrected_residuals: Vec<T>,
    pub tail_bounds: Vec<T>,
    pub terms_used: Vec<u64>,
    pub target: T,
    pub floor: T,
    pub tol: T,
    /// Least-squares slope of `ln(corrected residual)` against `1/α`, over points above the floor.
    pub decay_slope: Option<f64>,
    pub pass: bool,
}

impl<T: Real> LimitCertificate<T> {
    pub fn final_residual(&self) -> &T {
        self.residuals.last().expect("non-empty schedule")
    }

    pub fn final_corrected(&self) -> &T {
        self.corrected_residuals.last().expect("non-empty schedule")
    }

    /// Plain residuals strictly decrease along the schedule.
    pub fn residuals_decreasing(&self) -> bool {
        self.residuals.windows(2).all(|w| w[1] < w[0])
    }

    pub fn record(&self, label: &str) -> CheckRecord {
        let name = if self.k == 0 {
            format!("limit/N={}", self.m)
        } else {
            format!("klimit/K={}/M={}", self.k, self.m)
        };
        let detail = self
            .schedule
            .iter()
            .zip(self.residuals.iter().zip(&self.corrected_residuals))
            .map(|(a, (r, c))| format!("alpha={} plain={} corrected={}", rational_string(a), sci(r), sci(c)))
            .collect::<Vec<_>>()
            .join("; ");
        let slope = self.decay_slope.map(|s| format!("; decay slope {s:.4}")).unwrap_or_default();
        CheckRecord::numeric(name, label, self.pass, sci(self.final_corrected()), sci(&self.tol))
            .with_tails(self.tail_bounds.iter().map(sci).collect())
            .with_terms(self.terms_used.iter().sum())
            .with_detail(format!("target={}; {detail}{slope}", self.target.to_sci(20)))
    }
}

fn check_schedule(schedule: &[Rational]) -> Result<(), IdentityError> {
    let positive = schedule.iter().all(|a| a.is_positive());
    let decreasing = schedule.windows(2).all(|w| w[1] < w[0]);
    if schedule.is_empty() || !positive || !decreasing {
        return Err(IdentityError::Schedule);
    }
    Ok(())
}

fn decay_slope<T: Real>(schedule: &[Rational], residuals: &[T], floor: &T) -> Option<f64> {
    let pts: Vec<(f64, f64)> = schedule
        .iter()
        .zip(residuals)
        .filter(|(_, r)| *r > floor)
        .map(|(a, r)| (1.0 / T::from_rational(a, 64).to_f64(), r.log2_abs() * std::f64::consts::LN_2))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Certifies `lim_{α→0+} Σ_n (1/n) sinh(αn)/cosh(αn)^{2N+1} = Σ_k r_k(N) ζ(2k+1)/π^{2k}`.
pub fn verify_limit<T: Real>(
    n: u32,
    schedule: &[Rational],
    p: u32,
    tol: &T,
) -> Result<LimitCertificate<T>, IdentityError> {
    if n == 0 {
        return Err(IdentityError::Argument("N must be at least 1".into()));
    }
    let target = zeta_combination::<T>(&limit_coeffs(n as usize).r, working(p))?;
    certify(0, n, schedule, p, tol, target)
}

fn certify<T: Real>(
    k: u32,
    m: u32,
    schedule: &[Rational],
    p: u32,
    tol: &T,
    target: T,
) -> Result<LimitCertificate<T>, IdentityError> {
    check_schedule(schedule)?;
    let w = working(p);
    let floor: T = rounding_floor::<T>(p) * &(T::one() + target.abs());
    let series_tol: T = T::pow2(-(w as i64), w);
    let half = T::from_rational(&q(1, 2), w);
    let mut cert = LimitCertificate {
        k,
        m,
        schedule: schedule.to_vec(),
        values: Vec::new(),
        residuals: Vec::new(),
        corrected_residuals: Vec::new(),
        tail_bounds: Vec::new(),
        terms_used: Vec::new(),
        target,
        floor,
        tol: tol.clone(),
        decay_slope: None,
        pass: false,
    };
    for a in schedule {
        let alpha = T::from_rational(a, w);
        let s = crate::zetanum::k_sum(&alpha, k, m, &series_tol, DEFAULT_MAX_TERMS)?;
        cert.residuals.push((s.value.clone() - &cert.target).abs());
        cert.corrected_residuals.push((s.value.clone() + alpha * &half - &cert.target).abs());
        cert.values.push(s.value);
        cert.tail_bounds.push(s.tail_bound);
        cert.terms_used.push(s.terms_used);
    }
    let shrinking = cert.corrected_residuals.windows(2).all(|w| w[1] < w[0] || w[1] <= cert.floor);
    let bounded = cert.tail_bounds.iter().all(|t| *t < *tol);
    cert.decay_slope = decay_slope(schedule, &cert.corrected_residuals, &cert.floor);
    cert.pass = *cert.final_corrected() < *tol && shrinking && bounded;
    Ok(cert)
}

/// `L(K, M)` as exact weights over the base limits `L(0, M′)`, `M′ = M..=M+K`, using
/// `L(K,M) = −(2M/K) L(K−1,M) + ((K+2M+1)/K) L(K−1,M+1)`, and the resulting
/// coefficients of `ζ(2j+1)/π^{2j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KCombo {
    pub k: u32,
    pub m: u32,
    pub weights: BTreeMap<u32, Rational>,
    /// `zeta_coeffs[j−1]` multiplies `ζ(2j+1)/π^{2j}`.
    pub zeta_coeffs: Vec<Rational>,
}

impl KCombo {
    pub fn value<T: Real>(&self, prec: u32) -> Result<T, IdentityError> {
        zeta_combination(&self.zeta_coeffs, prec)
    }
}

fn k_weights(k: u32, m: u32) -> BTreeMap<u32, Rational> {
    if k == 0 {
        return BTreeMap::from([(m, Rational::one())]);
    }
    let (ki, mi) = (k as i64, m as i64);
    let mut out = BTreeMap::new();
    for (scale, sub) in [(q(-2 * mi, ki), k_weights(k - 1, m)), (q(ki + 2 * mi + 1, ki), k_weights(k - 1, m + 1))] {
        for (idx, wt) in sub {
            *out.entry(idx).or_insert_with(Rational::zero) += &scale * wt;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn klimit_combo(k: u32, m: u32) -> Result<KCombo, IdentityError> {
    if m == 0 {
        return Err(IdentityError::Argument("M must be at least 1".into()));
    }
    let weights = k_weights(k, m);
    let mut zeta_coeffs = vec![Rational::zero(); (m + k) as usize];
    for (&base, wt) in &weights {
        for (j, r) in limit_coeffs(base as usize).r.iter().enumerate() {
            zeta_coeffs[j] += wt * r;
        }
    }
    Ok(KCombo { k, m, weights, zeta_coeffs })
}

pub fn verify_klimit<T: Real>(
    k: u32,
    m: u32,
    schedule: &[Rational],
    p: u32,
    tol: &T,
) -> Result<LimitCertificate<T>, IdentityError> {
    let combo = klimit_combo(k, m)?;
    let target = combo.value::<T>(working(p))?;
    certify(k, m, schedule, p, tol, target)
}

/// `w_n = n 2^n / ((n+1) binom(2n+2, n+1))`.
pub fn cor41_weight(n: usize) -> Rational {
    let ni = n as i64;
    q(ni, ni + 1) * pow2_q(ni) / binom_q(2 * ni + 2, ni + 1)
}

/// `h_{k,n}` in floating point for `k ≤ k_max`, `n ≤ n_max`, same recursion as the exact table.
fn h_real<T: Real>(k_max: usize, n_max: usize, prec: u32) -> Vec<Vec<T>> {
    let mut h = vec![vec![T::int(0, prec); n_max + 1]; k_max + 1];
    if k_max >= 1 {
        for n in 1..=n_max {
            h[1][n] = T::int(1, prec);
        }
    }
    for k in 2..=k_max {
        for n in k..=n_max {
            let j = T::int((n - 1) as i64, prec);
            let step = h[k - 1][n - 1].clone() / (j.clone() * &j);
            h[k][n] = h[k][n - 1].clone() + step;
        }
    }
    h
}

/// Geometric estimate `|t_J| ρ/(1−ρ)` of `Σ_{j>J} t_j` from the last two terms.
fn outer_estimate<T: Real>(terms: &[T]) -> Option<T> {
    let [.., a, b] = terms else { return None };
    if a.is_zero() {
        return None;
    }
    let rho = (b.clone() / a).abs();
    (rho < T::one()).then(|| b.abs() * &rho / (T::one() - rho))
}

#[derive(Clone, Debug)]
pub struct Cor41Result<T> {
    /// `coefficients[j−1]` multiplies `ζ(2j+1)/π^{2j}`.
    pub coefficients: Vec<T>,
    pub lhs: T,
    pub rhs: T,
    pub residual: T,
    pub inner_tail: T,
    /// Extrapolated, not a bound.
    pub outer_estimate: Option<T>,
    pub report: IdentityReport,
}

/// `Σ_{j≥1} c_j ζ(2j+1)/π^{2j} = 28 ζ(3)/π²` with
/// `c_j = 4(2j)! (2 − 4^{−j}) Σ_{n≥j−1} w_n h_{j,n+1}` (so `c_1 = 14 Σ_n w_n`),
/// truncated at `j ≤ J` and `n ≤ n_budget`.
pub fn verify_recurrence_cor41<T: Real>(
    j_max: usize,
    n_budget: usize,
    p: u32,
    tol: &T,
) -> Result<Cor41Result<T>, IdentityError> {
    if j_max < 2 || n_budget < j_max {
        return Err(IdentityError::Argument("need J >= 2 and n_budget >= J".into()));
    }
    let w = working(p);
    let label = "odd_zeta_recurrence1";
    let h = h_real::<T>(j_max, n_budget + 1, w);
    let weights: Vec<T> = (0..=n_budget).map(|n| T::from_rational(&cor41_weight(n), w)).collect();
    let pi2 = T::pi(w).powi(2);
    let zeta2 = pi2.clone() / T::int(6, w);

    // w_n ≤ √(n+1) 2^{−n−1}, consecutive ratio ≤ √(3/2)/2 < 5/8
    let root = (T::int(n_budget as i64 + 2, w).ln() / T::int(2, w)).exp();
    let weight_tail = root * T::from_rational(&q(8, 3), w) * T::pow2(-(n_budget as i64) - 2, w);

    let mut coefficients = Vec::with_capacity(j_max);
    let mut terms = Vec::with_capacity(j_max);
    let mut inner_tail = T::int(0, w);
    let mut pi_pow = T::one();
    let mut h_cap = T::one();
    for j in 1..=j_max {
        let ji = j as i64;
        pi_pow = pi_pow * &pi2;
        if j >= 2 {
            // h_{j,n} ≤ ζ(2)^{j−1}/(j−1)!
            h_cap = h_cap * &zeta2 / T::int(ji - 1, w);
        }
        let front = T::from_rational(&(q(4, 1) * factorial_q(2 * j as u64) * (q(2, 1) - pow2_q(-2 * ji))), w);
        let inner = (j - 1..=n_budget).fold(T::int(0, w), |acc, n| acc + weights[n].clone() * &h[j][n + 1]);
        let c = front.clone() * inner;
        let z = zeta_int::<T>(2 * ji + 1, w)? / &pi_pow;
        inner_tail = inner_tail + front * &h_cap * &weight_tail * &z;
        terms.push(c.clone() * &z);
        coefficients.push(c);
    }
    let lhs = terms.iter().fold(T::int(0, w), |acc, t| acc + t);
    let rhs = T::int(28, w) * zeta_int::<T>(3, w)? / &pi2;
    let residual = (lhs.clone() - &rhs).abs();
    let outer = outer_estimate(&terms);
    let floor = rounding_floor::<T>(p) * &T::int(32, w);

    let mut report = IdentityReport::new("odd zeta recurrence");
    report.exact("cor41/first_inner_weight", label, cor41_weight(1) == q(1, 6), || {
        format!("w_1 = {}", rational_string(&cor41_weight(1)))
    });
    let c1_err = (coefficients[0].clone() - T::int(7, w)).abs();
    let c1_allow = T::int(14, w) * &weight_tail + &floor;
    report.push(
        CheckRecord::numeric("cor41/leading_coefficient_is_7", label, c1_err <= c1_allow, sci(&c1_err), sci(&c1_allow))
            .with_detail("14 Σ w_n = 7"),
    );
    let budget_ok = match &outer {
        Some(o) => inner_tail.clone() + o < *tol,
        None => false,
    };
    let pass = residual < *tol && budget_ok;
    let mut rec = CheckRecord::numeric(format!("cor41/residual/J={j_max}"), label, pass, sci(&residual), sci(tol))
        .with_tails(vec![
            format!("inner n>{n_budget}: {}", sci(&inner_tail)),
            format!(
                "outer j>{j_max} (estimate): {}",
                outer.as_ref().map(sci).unwrap_or_else(|| "not geometric".into())
            ),
        ])
        .with_terms((j_max * (n_budget + 1)) as u64);
    if !budget_ok {
        rec = rec.with_detail("truncation budget does not reach the tolerance");
    }
    report.push(rec);
    Ok(Cor41Result { coefficients, lhs, rhs, residual, inner_tail, outer_estimate: outer, report })
}

/// Checks the geometric identity `tanh(x) Σ_{k≥0} (2cosh²x)^{−k} = tanh(2x)` and its second
/// derivative `Σ_{k≥1} k(k+1) 2^{−k} sinh(x)/cosh(x)^{2k+3} = 4 sinh(2x)/cosh(2x)³` at each point.
pub fn verify_tanh_ids<T: Real>(points: &[Rational], p: u32) -> Result<IdentityReport, IdentityError> {
    let w = working(p);
    let tol = T::pow2(-(p as i64) + 16, w);
    let eps = T::pow2(-(w as i64), w);
    let one = T::one();
    let mut report = IdentityReport::new("tanh identities");
    for x in points {
        if !x.is_positive() {
            return Err(IdentityError::Argument("points must be positive".into()));
        }
        let xv = T::from_rational(x, w);
        let ch = xv.cosh();
        let th = xv.tanh();
        let r = one.clone() / (ch.clone() * &ch * T::int(2, w));
        let tag = rational_string(x);

        let mut sum = T::int(0, w);
        let mut pow = T::one();
        let mut k: u64 = 0;
        let tail1 = loop {
            sum = sum + &pow;
            pow = pow * &r;
            k += 1;
            let tail = th.clone() * &pow / (one.clone() - &r);
            if tail < eps {
                break tail;
            }
        };
        let two_x = xv.clone() * T::int(2, w);
        let res1 = (th.clone() * sum - two_x.tanh()).abs();
        report.push(
            CheckRecord::numeric(format!("tanh_identity/x={tag}"), "id_tanh", res1 < tol, sci(&res1), sci(&tol))
                .with_tails(vec![sci(&tail1)])
                .with_terms(k),
        );

        let base = xv.sinh() / ch.powi(3);
        let mut sum = T::int(0, w);
        let mut pow = r.clone();
        let mut k: i64 = 1;
        let tail2 = loop {
            sum = sum + T::int(k * (k + 1), w) * &pow;
            pow = pow * &r;
            k += 1;
            let first = T::int(k * (k + 1), w) * &pow;
            let ratio = T::int(k + 2, w) / T::int(k, w) * &r;
            if ratio < one && k > 2 {
                let tail = base.clone() * first / (one.clone() - ratio);
                if tail < eps {
                    break tail;
                }
            }
        };
        let rhs = two_x.sinh() / two_x.cosh().powi(3) * T::int(4, w);
        let res2 = (base * sum - rhs).abs();
        report.push(
            CheckRecord::numeric(
                format!("tanh_identity_differentiated/x={tag}"),
                "id_from_tanh",
                res2 < tol,
                sci(&res2),
                sci(&tol),
            )
            .with_tails(vec![sci(&tail2)])
            .with_terms(k as u64),
        );
    }
    Ok(report)
}

/// A relation `Σ_j R_j ζ(2j+1)/π^{2j} = 0` obtained by differentiating the
/// `id_from_tanh` identity `2(N−1)` times and passing to the small-α limit termwise.
#[derive(Clone, Debug)]
pub struct TanhRecurrence<T> {
    pub n: u32,
    pub k_max: u32,
    /// Contribution of the series side, `lhs_coeffs[j−1]` at `ζ(2j+1)/π^{2j}`.
    pub lhs_coeffs: Vec<T>,
    /// Contribution of the closed side.
    pub rhs_coeffs: Vec<T>,
    /// `R_j = lhs_j − rhs_j`.
    pub relation: Vec<T>,
    pub residual: T,
    pub inner_tail: T,
    pub outer_estimate: Option<T>,
    pub report: IdentityReport,
}

/// `r_j(m)` in floating point from a precomputed `h` table.
fn limit_weight<T: Real>(j: usize, m: usize, h: &[Vec<T>], prec: u32) -> T {
    if j > m {
        return T::int(0, prec);
    }
    let (ji, mi) = (j as i64, m as i64);
    let exact = factorial_q(2 * j as u64) * (pow2_q(2 * mi + 1) - pow2_q(2 * (mi - ji)))
        / (binom_q(2 * mi, mi) * q(mi * mi, 1));
    T::from_rational(&exact, prec) * &h[j][m]
}

pub fn generate_tanh_recurrence<T: Real>(
    n: u32,
    k_max: u32,
    j_max: usize,
    p: u32,
    tol: &T,
) -> Result<TanhRecurrence<T>, IdentityError> {
    if n == 0 {
        return Err(IdentityError::Argument("N must be at least 1".into()));
    }
    if j_max < 2 || k_max < 2 {
        return Err(IdentityError::Argument("need J >= 2 and k_max >= 2".into()));
    }
    let w = working(p);
    let d = n - 1;
    let sides = tanh_family_sides(d, k_max);
    if !sides.lhs_total.coeff(0).is_zero() || !sides.rhs.coeff(0).is_zero() {
        return Err(IdentityError::Argument("tanh(x) itself has no finite limit sum".into()));
    }
    let m_max = sides.lhs_total.coeffs.len().max(sides.rhs.coeffs.len());
    let h = h_real::<T>(j_max, m_max, w);

    let project = |coeffs: &[Rational]| -> Vec<T> {
        let reals: Vec<(usize, T)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, T::from_rational(c, w)))
            .collect();
        (1..=j_max)
            .map(|j| reals.iter().fold(T::int(0, w), |acc, (m, c)| acc + c.clone() * limit_weight(j, *m, &h, w)))
            .collect()
    };
    let lhs_coeffs = project(&sides.lhs_total.coeffs);
    let rhs_coeffs = project(&sides.rhs.coeffs);
    let relation: Vec<T> = lhs_coeffs.iter().zip(&rhs_coeffs).map(|(a, b)| a.clone() - b).collect();

    let pi2 = T::pi(w).powi(2);
    let mut pi_pow = T::one();
    let mut terms = Vec::with_capacity(j_max);
    for (i, r) in relation.iter().enumerate() {
        pi_pow = pi_pow * &pi2;
        terms.push(r.clone() * zeta_int::<T>(2 * i as i64 + 3, w)? / &pi_pow);
    }
    let residual = terms.iter().fold(T::int(0, w), |acc, t| acc + t).abs();
    let outer = outer_estimate(&terms);

    // Limits of single basis sums decrease in m, so each is at most L(1) = 7ζ(3)/π².
    // 2N' derivatives of T_{k+1} have absolute coefficient sum ≤ (8(k+N'+2)²)^{N'}.
    let l1 = T::int(7, w) * zeta_int::<T>(3, w)? / &pi2;
    let mut tail_sum = T::int(0, w);
    let eps = T::pow2(-(w as i64) - 8, w);
    for k in (k_max as i64 + 1).. {
        let growth = T::int(8 * (k + d as i64 + 2).pow(2), w).powi(d as i64);
        let t = T::int(k * (k + 1), w) * T::pow2(-k, w) * growth;
        tail_sum = tail_sum + &t;
        if t < eps && k > 2 * (k_max as i64 + 8) {
            break;
        }
    }
    let inner_tail = l1 * tail_sum;

    let label = "id_from_tanh";
    let mut report = IdentityReport::new("tanh recurrence generator");
    let budget_ok = outer.as_ref().is_some_and(|o| inner_tail.clone() + o < *tol);
    let pass = residual < *tol && budget_ok;
    let mut rec = CheckRecord::numeric(format!("tanh_recurrence/N={n}/J={j_max}"), label, pass, sci(&residual), sci(tol))
        .with_tails(vec![
            format!("inner k>{k_max}: {}", sci(&inner_tail)),
            format!(
                "outer j>{j_max} (estimate): {}",
                outer.as_ref().map(sci).unwrap_or_else(|| "not geometric".into())
            ),
        ])
        .with_terms((j_max * m_max) as u64);
    if !budget_ok {
        rec = rec.with_detail("truncation budget does not reach the tolerance");
    }
    report.push(rec);
    Ok(TanhRecurrence {
        n,
        k_max,
        lhs_coeffs,
        rhs_coeffs,
        relation,
        residual,
        inner_tail,
        outer_estimate: outer,
        report,
    })
}

/// Largest relative difference between the generator's `N = 1` relation and the
/// coefficients `c_j`, `28` of the odd zeta recurrence.
pub fn compare_generator_with_cor41<T: Real>(gen: &TanhRecurrence<T>, cor: &Cor41Result<T>) -> T {
    let prec = gen.residual.precision();
    let mut worst = T::int(0, prec);
    for (j, (a, b)) in gen.lhs_coeffs.iter().zip(&cor.coefficients).enumerate() {
        let scale = T::one() + b.abs();
        let d = (a.clone() - b).abs() / scale;
        if d > worst {
            worst = d;
        }
        let expect_rhs = if j == 0 { T::int(28, prec) } else { T::int(0, prec) };
        let d = (gen.rhs_coeffs[j].clone() - expect_rhs).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

/// Both printed forms of the splitting of `cosh(x)/sinh(x)^{2m+1}` into a
/// `sinh/cosh` term and terms in `2x`, at the given points.
pub fn verify_coth_splitting<T: Real>(m_max: u32, points: &[Rational], p: u32) -> Result<IdentityReport, IdentityError> {
    let w = working(p);
    let mut report = IdentityReport::new("coth splitting");
    for x in points {
        let xv = T::from_rational(x, w);
        let (s1, c1) = (xv.sinh(), xv.cosh());
        let y = xv.clone() * T::int(2, w);
        let (s2, c2) = (y.sinh(), y.cosh());
        let tag = rational_string(x);
        for m in 1..=m_max as i64 {
            let odd_lhs = c1.clone() / s1.powi(4 * m - 1);
            let odd_a = (0..=m).fold(-(s1.clone() / c1.powi(4 * m - 1)), |acc, k| {
                let c = pow2_q(2 * (m + k)) * q(m, m + k) * binom_q(m + k, 2 * k);
                acc + T::from_rational(&c, w) / s2.powi(2 * (m + k) - 1)
            });
            let odd_b = (0..m).fold(s1.clone() / c1.powi(4 * m - 1), |acc, k| {
                let c = pow2_q(2 * (m + k) + 1) * q(m - k, 2 * k + 1) * binom_q(m + k, 2 * k);
                acc + T::from_rational(&c, w) * &c2 / s2.powi(2 * (m + k) + 1)
            });
            let even_lhs = c1.clone() / s1.powi(4 * m + 1);
            let even_a = (0..=m).fold(s1.clone() / c1.powi(4 * m + 1), |acc, k| {
                let c = pow2_q(2 * (m + k) + 1) * q(2 * m + 1, 2 * k + 1) * binom_q(m + k, 2 * k);
                acc + T::from_rational(&c, w) / s2.powi(2 * (m + k) + 1)
            });
            let even_b = (0..=m).fold(-(s1.clone() / c1.powi(4 * m + 1)), |acc, k| {
                let c = pow2_q(2 * (m + k) + 1) * binom_q(m + k, 2 * k);
                acc + T::from_rational(&c, w) * &c2 / s2.powi(2 * (m + k) + 1)
            });
            for (lhs, rhs, form, label, fam) in [
                (&odd_lhs, odd_a, "a", "eq_coth_odd", "odd"),
                (&odd_lhs, odd_b, "b", "eq_coth_odd", "odd"),
                (&even_lhs, even_a, "a", "eq_coth_even", "even"),
                (&even_lhs, even_b, "b", "eq_coth_even", "even"),
            ] {
                let tol = rounding_floor::<T>(p) * &(T::one() + lhs.abs());
                let res = (lhs.clone() - rhs).abs();
                report.push(CheckRecord::numeric(
                    format!("coth_split_{fam}/M={m}/form={form}/x={tag}"),
                    label,
                    res < tol,
                    sci(&res),
                    sci(&tol),
                ));
            }
        }
    }
    Ok(report)
}

/// Both sides of Ramanujan's formula for each `(α, n)`; tolerance is the rounding floor
/// scaled by the size of the terms.
pub fn verify_ramanujan<T: Real>(alphas: &[(String, T)], ns: &[u32], p: u32) -> Result<IdentityReport, IdentityError> {
    let w = working(p);
    let series_tol = T::pow2(-(w as i64) - 8, w);
    let mut report = IdentityReport::new("ramanujan");
    for (tag, alpha) in alphas {
        for &n in ns {
            let s = ramanujan_sides(alpha, n, &series_tol)?;
            let tol = rounding_floor::<T>(p) * &(T::one() + s.rhs.abs());
            let res = (s.lhs.clone() - &s.rhs).abs();
            report.push(
                CheckRecord::numeric(format!("ramanujan/alpha={tag}/n={n}"), "ramanujan_formula", res < tol, sci(&res), sci(&tol))
                    .with_tails(vec![sci(&s.tail_bound)])
                    .with_terms(s.terms_used),
            );
        }
    }
    // ζ(3) = 7π³/180 − 2 Σ 1/(n³(e^{2πn} − 1))
    let pi = T::pi(w);
    let l = lambert_sum(&pi, 3, &series_tol, DEFAULT_MAX_TERMS)?;
    let closed = pi.powi(3) * T::int(7, w) / T::int(180, w) - l.value * T::int(2, w);
    let res = (zeta_int::<T>(3, w)? - closed).abs();
    let tol = rounding_floor::<T>(p);
    report.push(
        CheckRecord::numeric("ramanujan/zeta3_at_alpha_eq_beta", "ramanujan_formula", res < tol, sci(&res), sci(&tol))
            .with_tails(vec![sci(&l.tail_bound)])
            .with_terms(l.terms_used),
    );
    Ok(report)
}

/// The two rewritings of Ramanujan's formula as coth series, both printed right-hand
/// forms, plus the vanishing of the even family at `α = 1`.
pub fn verify_cor32<T: Real>(alphas: &[Rational], m_max: u32, p: u32) -> Result<IdentityReport, IdentityError> {
    let w = working(p);
    let series_tol = T::pow2(-(w as i64) - 8, w);
    let mut report = IdentityReport::new("coth series");
    let one = T::int(1, w);
    for m in 1..=m_max {
        let s = cor32_sides(&one, m, Cor32Parity::Even, &series_tol)?;
        let scale = T::one() + s.lhs.abs();
        let tol = rounding_floor::<T>(p);
        let worst = if s.lhs.abs() > s.rhs_expanded.abs() { s.lhs.abs() } else { s.rhs_expanded.abs() };
        let worst = worst / scale;
        report.push(CheckRecord::numeric(
            format!("coth_series_even/M={m}/alpha=1/vanishes"),
            "eq_N_even",
            worst < tol,
            sci(&worst),
            sci(&tol),
        ));
    }
    for a in alphas {
        let av = T::from_rational(a, w);
        let tag = rational_string(a);
        for (parity, label, fam, start) in
            [(Cor32Parity::Even, "eq_N_even", "even", 1), (Cor32Parity::Odd, "eq_N_odd", "odd", 0)]
        {
            for m in start..=m_max {
                let s = cor32_sides(&av, m, parity, &series_tol)?;
                let tol = rounding_floor::<T>(p) * &(T::one() + s.rhs_expanded.abs());
                let r1 = (s.lhs.clone() - &s.rhs_expanded).abs();
                let r2 = (s.rhs_paired.clone() - &s.rhs_expanded).abs();
                report.push(
                    CheckRecord::numeric(format!("coth_series_{fam}/M={m}/alpha={tag}"), label, r1 < tol, sci(&r1), sci(&tol))
                        .with_tails(vec![sci(&s.tail_bound)]),
                );
                report.push(CheckRecord::numeric(
                    format!("coth_series_{fam}/M={m}/alpha={tag}/forms"),
                    label,
                    r2 < tol,
                    sci(&r2),
                    sci(&tol),
                ));
            }
        }
    }
    Ok(report)
}
