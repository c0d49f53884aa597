//! Randomized algebraic laws across modules.

use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;
use qloop_core::barcomp::jet;
use qloop_core::loopalg::{normal_order_h, straighten_rank1};
use qloop_core::symfunc::{chi_coeff, pair_h, xi_coeff, SymElement};
use qloop_core::{qbinom, qint, CartanData, Element, Laurent, Letter, PairingContext, Scalar, Window, ZeroVerdict};

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 1..4).prop_map(|t| Laurent::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { Scalar::from_laurent(n) } else { Scalar::from_ratio(n, d).unwrap() })
}

fn sl2_word(max: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(-1i64..=2, 1..=max).prop_map(|d| Element::word(d.into_iter().map(|k| Letter::E(0, k)).collect()))
}

fn mixed_word() -> impl Strategy<Value = Element> {
    prop::collection::vec((0usize..2, -1i64..=1, prop::bool::weighted(0.25)), 0..4).prop_map(|ls| {
        Element::word(ls.into_iter().map(|(i, d, h)| if h { Letter::H(i, d.abs() + 1) } else { Letter::E(i, d) }).collect())
    })
}

fn sl2(lo: i64, hi: i64) -> PairingContext {
    PairingContext::new(CartanData::type_a(1), Window::new(lo, hi).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn bar_is_a_ring_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn quantum_integers(a in -6i64..=6, b in -6i64..=6) {
        prop_assert_eq!(qint(a + b), &(&Scalar::v_pow(-b) * &qint(a)) + &(&Scalar::v_pow(a) * &qint(b)));
        prop_assert_eq!(qint(a).bar(), qint(a));
    }

    #[test]
    fn pascal(r in 1i64..=7, k in 1i64..=6) {
        // [r, k] = v^{-k} [r-1, k] + v^{r-k} [r-1, k-1]
        let rhs = &(&Scalar::v_pow(-k) * &qbinom(r - 1, k)) + &(&Scalar::v_pow(r - k) * &qbinom(r - 1, k - 1));
        prop_assert_eq!(qbinom(r, k), rhs);
    }

    #[test]
    fn xi_chi_are_inverse(s in 1i64..=4) {
        let mut acc = SymElement::zero(0);
        for k in 0..=s {
            acc = acc.add(&xi_coeff(0, k).unwrap().mul(&chi_coeff(0, s - k).unwrap()));
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn pair_h_symmetric(a in 1u32..=3, b in 1u32..=3) {
        let x = SymElement::power_sum(0, &[a]).add(&SymElement::power_sum(0, &[b, 1]));
        let y = SymElement::power_sum(0, &[a + b]).add(&SymElement::power_sum(0, &[b]));
        prop_assert_eq!(pair_h(&x, &y), pair_h(&y, &x));
    }

    #[test]
    fn multiplication_is_associative(x in mixed_word(), y in mixed_word(), z in mixed_word()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn normal_order_is_idempotent_and_graded(x in mixed_word()) {
        let c = CartanData::type_a(2);
        let n = normal_order_h(&x, &c).unwrap();
        prop_assert_eq!(normal_order_h(&n, &c).unwrap(), n.clone());
        if !n.is_zero() {
            prop_assert_eq!(n.weight(2).unwrap(), x.weight(2).unwrap());
        }
    }

    #[test]
    fn pairing_is_symmetric(x in sl2_word(3), y in sl2_word(3)) {
        let c = sl2(-1, 2);
        prop_assert_eq!(c.hopf_pair(&x, &y).unwrap(), c.hopf_pair(&y, &x).unwrap());
    }

    #[test]
    fn straightening_preserves_the_element(x in sl2_word(3)) {
        let c = sl2(-1, 2);
        let s = straighten_rank1(&x, 0, &c.cartan).unwrap();
        prop_assert_eq!(c.is_zero_in(&s.sub(&x), c.hull(&x)).unwrap(), ZeroVerdict::PresumedZero);
    }

    #[test]
    fn jets_are_idempotent(x in sl2_word(2), m in -2i64..=4) {
        let c = sl2(-1, 2);
        let level = Rational64::new(m, 2);
        let j = jet(&c, &x, level).unwrap();
        prop_assert_eq!(jet(&c, &j.value, level).unwrap().value, j.value);
    }
}
