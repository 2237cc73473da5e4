//! Ring axioms for the exact scalar types.

use hecke_core::{LaurentPoly, Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..5, rational()), 0..5).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert_eq!(a.clone() - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * &a.inverse().unwrap(), Rational::one());
        }
    }

    #[test]
    fn rational_string_round_trip(a in rational()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert_eq!(a.clone() * &LaurentPoly::one(), a.clone());
        prop_assert_eq!(a.clone() + &(-a.clone()), LaurentPoly::zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in laurent(), b in laurent(), x in rational()) {
        prop_assume!(!x.is_zero());
        let ea = a.evaluate(&x).unwrap();
        let eb = b.evaluate(&x).unwrap();
        prop_assert_eq!((a.clone() + &b).evaluate(&x).unwrap(), ea.clone() + &eb);
        prop_assert_eq!((a * &b).evaluate(&x).unwrap(), ea * &eb);
    }

    #[test]
    fn monomials_are_units(c in rational(), k in -6i64..6) {
        prop_assume!(!c.is_zero());
        let m = LaurentPoly::monomial(c, k);
        prop_assert_eq!(m.clone() * &m.inverse().unwrap(), LaurentPoly::one());
    }
}

#[test]
fn non_monomials_are_not_units() {
    let p = LaurentPoly::variable() + &LaurentPoly::one();
    assert!(p.inverse().is_err());
    assert!(Rational::zero().inverse().is_err());
}
