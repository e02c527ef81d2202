//! Numeric values checked against digits computed independently with mpmath.

use zetarecur::exactcore::q;
use zetarecur::identities::{klimit_combo, zeta_combination};
use zetarecur::scalar::{parse_rational, Real};
use zetarecur::zetanum::{k_sum, lambert_sum, s_sum, zeta_int, DEFAULT_MAX_TERMS};
use zetarecur::BigFloat;

const W: u32 = 288;

fn dec(s: &str) -> BigFloat {
    BigFloat::from_rational(&parse_rational(s).unwrap(), W)
}

fn tiny() -> BigFloat {
    BigFloat::pow2(-(W as i64), W)
}

fn assert_close(got: &BigFloat, want: &str, digits: i64) {
    let err = (got.clone() - &dec(want)).abs();
    assert!(err < dec(&format!("1e-{digits}")), "got {} want {want}", got.to_sci(40));
}

#[test]
fn odd_zeta_values() {
    assert_close(
        &zeta_int::<BigFloat>(3, W).unwrap(),
        "1.20205690315959428539973816151144999076498629234049888179227155534183820578631309018645587",
        80,
    );
    assert_close(
        &zeta_int::<BigFloat>(5, W).unwrap(),
        "1.03692775514336992633136548645703416805708091950191281197419267790380358978628148456004311",
        80,
    );
}

#[test]
fn hyperbolic_sums_at_one_half() {
    let a = dec("0.5");
    assert_close(&s_sum(&a, 1, &tiny(), DEFAULT_MAX_TERMS).unwrap().value, "0.6025577325103425294455330735885428346605", 38);
    assert_close(&s_sum(&a, 2, &tiny(), DEFAULT_MAX_TERMS).unwrap().value, "0.3641972016378701618709425798301396431027", 38);
}

#[test]
fn limit_values() {
    let l1: BigFloat = zeta_combination(&[q(7, 1)], W).unwrap();
    assert_close(&l1, "0.852556797635011581847042853192333746116", 38);
    let l2: BigFloat = klimit_combo(0, 2).unwrap().value(W).unwrap();
    assert_close(&l2, "0.6141831391561069975511433440807358101218", 38);
    let k11: BigFloat = klimit_combo(1, 1).unwrap().value(W).unwrap();
    assert_close(&k11, "0.7516189613544048265104876699382757482553", 38);
}

#[test]
fn weighted_sum_at_one_quarter() {
    let v = k_sum(&dec("0.25"), 1, 1, &tiny(), DEFAULT_MAX_TERMS).unwrap().value;
    assert_close(&v, "0.6266189613544607932470463732737604347757", 38);
}

#[test]
fn lambert_at_pi() {
    let pi = BigFloat::pi(W);
    let l = lambert_sum(&pi, 3, &tiny(), DEFAULT_MAX_TERMS).unwrap().value * BigFloat::int(2, W);
    assert_close(&l, "0.003742745518732054757674091098048711543775", 40);
}
