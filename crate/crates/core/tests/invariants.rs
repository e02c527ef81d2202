use num_traits::{One, Zero};
use proptest::prelude::*;
use zetarecur::coeffs::{build_c, build_l, build_u, build_v, c_closed_form, HTable};
use zetarecur::cothalg::{poly_to_basis, BasisKind, CPoly};
use zetarecur::exactcore::{binom, q};
use zetarecur::identities::schedule_down_to;
use zetarecur::laurent::LaurentPoly;
use zetarecur::{MatrixQ, Rational};

/// Coefficients of `Π_{j<n} (1 + t/j²)`; `h_{k,n}` is the one at `t^{k−1}`.
fn elementary_symmetric(n: usize) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for j in 1..n as i64 {
        let w = q(1, j * j);
        let mut next = e.clone();
        next.push(Rational::zero());
        for (i, c) in e.iter().enumerate() {
            next[i + 1] += c * &w;
        }
        e = next;
    }
    e
}

fn lp(terms: Vec<(i64, i64)>) -> LaurentPoly<Rational> {
    LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, q(c, 1))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn h_matches_symmetric_functions(n in 1usize..25) {
        let h = HTable::build(n, n);
        let e = elementary_symmetric(n);
        for k in 1..=n {
            prop_assert_eq!(h.get(k, n), &e[k - 1]);
        }
    }

    #[test]
    fn u_and_v_are_inverse(n in 1usize..16) {
        let c = build_c(n).unwrap();
        let u = build_u(&c).unwrap();
        let v = build_v(&u, &HTable::build(n, n)).unwrap();
        prop_assert_eq!(u.mul(&v), MatrixQ::identity(n));
        prop_assert_eq!(v.mul(&u), MatrixQ::identity(n));
    }

    #[test]
    fn l_is_banded(n in 1usize..20) {
        let l = build_l(n);
        for i in 1..=n {
            for j in 1..=n {
                if j > i || 2 * j < i {
                    prop_assert!(l.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn c_closed_form_matches_derivatives(n in 1usize..10) {
        let mut p = CPoly::<Rational>::var();
        for _ in 0..n {
            p = p.derive().derive();
        }
        let b = poly_to_basis(&p, BasisKind::Coth).unwrap();
        for k in 1..=n {
            prop_assert_eq!(b.coeff(k), c_closed_form(n, k));
        }
    }

    #[test]
    fn laurent_product_evaluates_pointwise(
        a in prop::collection::vec((-6i64..6, -9i64..9), 0..6),
        b in prop::collection::vec((-6i64..6, -9i64..9), 0..6),
        z in 1i64..7,
    ) {
        let (pa, pb) = (lp(a), lp(b));
        let z = q(z, 3);
        prop_assert_eq!(pa.mul(&pb).eval(&z), pa.eval(&z) * pb.eval(&z));
    }

    #[test]
    fn pascal_rule(n in 1i64..60, k in -3i64..63) {
        prop_assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
    }

    #[test]
    fn schedules_halve_down_to_the_minimum(e in 0u32..12) {
        let min = q(1, 1 << e);
        let s = schedule_down_to(&min).unwrap();
        prop_assert_eq!(s.first().unwrap(), &Rational::one());
        prop_assert_eq!(s.last().unwrap(), &min);
        prop_assert!(s.windows(2).all(|w| w[1] < w[0]));
    }
}
