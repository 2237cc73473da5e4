//! The eigen-equation and value formulas checked against independent
//! oracles.

use hecke_core::distinction::{coset_measure, per_term_value};
use hecke_core::spherical::{psi0_coefficient, verify_eigen_generator, SphericalTruncation};
use hecke_core::tensor::{apply, ev, pair};
use hecke_core::weyl::enumerate_by_length;
use hecke_core::{
    AffinePermutation, ExtendedWeylElement, LaurentPoly, LevelZeroParams, Rational, Scalar, SphericalParams,
    TensorVector, Truncation,
};

/// Coefficient of `[u]` in `[s_i] * sum c(v) [v]`, read off the quadratic
/// relation: with `u = Pi^k u0` and `j = i + k mod e`, it is
/// `c(s_j u0) + (q1 - 1) c(u0)` if `s_j u0 < u0`, else `q1 c(s_j u0)`.
fn local_rule(
    i: usize,
    u: &ExtendedWeylElement,
    q1: &LaurentPoly,
    c: impl Fn(&ExtendedWeylElement) -> LaurentPoly,
) -> LaurentPoly {
    let e = u.rank();
    let k = u.shift();
    let j = (i as i64 + k).rem_euclid(e as i64) as usize;
    let u0 = ExtendedWeylElement::new(0, u.finite_part().clone());
    let (_, v0) = u0.left_mul_generator(j).unwrap().into_parts();
    let v = ExtendedWeylElement::new(k, v0.clone());
    if v0.length() < u0.length() {
        c(&v) + &((q1.clone() - &LaurentPoly::one()) * &c(u))
    } else {
        q1.clone() * &c(&v)
    }
}

/// Direct formula `(-1/q1)^l chi^{-k}` from the window data only.
fn psi_direct(w: &ExtendedWeylElement, chi: &Rational) -> LaurentPoly {
    let l = w.length() as i64;
    let sign = if l % 2 == 0 { Rational::one() } else { -Rational::one() };
    LaurentPoly::monomial(sign * &chi.pow(-w.shift()).unwrap(), -l)
}

#[test]
fn algebra_product_matches_local_rule() {
    for e in [2usize, 3] {
        let chi = Rational::new(3, 2).unwrap();
        let p = SphericalParams::generic(e, chi.clone()).unwrap();
        let t = Truncation::new(6);
        let psi = SphericalTruncation::build(&p, t).unwrap();
        let alg = p.algebra();
        for i in 0..e {
            let lhs = alg.left_generator_product(i, &psi.element).unwrap();
            for (len, layer) in psi.layers.iter().enumerate().take(t.max_length) {
                for w0 in layer {
                    for k in -1..=1 {
                        let u = ExtendedWeylElement::new(k, w0.clone());
                        let oracle = local_rule(i, &u, &p.q1, |w| psi_direct(w, &chi));
                        assert_eq!(lhs.coefficient(&u), oracle, "e={e} i={i} u={u:?} len={len}");
                        assert_eq!(oracle, -psi_direct(&u, &chi));
                    }
                }
            }
        }
    }
}

#[test]
fn psi0_coefficient_matches_direct_formula() {
    let chi = Rational::new(-2, 5).unwrap();
    let p = SphericalParams::generic(3, chi.clone()).unwrap();
    for w0 in enumerate_by_length(3, 5).unwrap().into_iter().flatten() {
        for k in -2..=2 {
            let w = ExtendedWeylElement::new(k, w0.clone());
            assert_eq!(psi0_coefficient(&w, &p), psi_direct(&w, &chi));
        }
    }
}

#[test]
fn eigen_fails_for_a_perturbed_sum() {
    // Positive signs instead of (-1/q1)^l must not satisfy the identity.
    let p = SphericalParams::generic(2, Rational::one()).unwrap();
    let mut psi = SphericalTruncation::build(&p, Truncation::new(4)).unwrap();
    let s1 = hecke_core::weyl::generator(2, 1).unwrap();
    let c = psi.element.coefficient(&s1);
    psi.element.add_term(s1, -(c.clone() + &c));
    let lhs = p.algebra().left_generator_product(1, &psi.element).unwrap();
    let id = ExtendedWeylElement::identity(2).unwrap();
    assert_ne!(lhs.coefficient(&id), -psi.element.coefficient(&id));
    assert!(verify_eigen_generator(1, Truncation::new(4), &p).unwrap().ok());
}

#[test]
fn operator_model_agrees_with_value_formula() {
    let v0 = vec![Rational::from(1), Rational::from(2)];
    let vt0 = vec![Rational::from(3), Rational::new(-1, 2).unwrap()];
    for e in [3usize, 5] {
        let v = TensorVector::pure_power(&v0, e).unwrap();
        let vt = TensorVector::pure_power(&vt0, e).unwrap();
        let base = pair(&v, &vt).unwrap();
        for f in [1u32, 2] {
            for q0 in [2u64, 3] {
                let p = LevelZeroParams::new(e, f, q0).unwrap();
                let q1 = Rational::from(q0 as i64).pow(2 * f as i64).unwrap();
                for w0 in enumerate_by_length(e, 3).unwrap().into_iter().flatten() {
                    let l = w0.length() as i64;
                    let w = ExtendedWeylElement::new(0, w0.clone());
                    let op = ev(&w, &p).unwrap();
                    let value = (-q1.inverse().unwrap()).pow(l).unwrap() * &pair(&apply(&op, &v).unwrap(), &vt).unwrap();
                    let formula = hecke_core::spherical::matrix_coefficient_scalar(&w0, 0, &p).unwrap() * &base;
                    assert_eq!(value, formula);
                }
            }
        }
    }
}

#[test]
fn per_term_is_measure_times_coefficient() {
    for (f, q0) in [(1u32, 2u64), (2, 2), (1, 3), (2, 3)] {
        let p = LevelZeroParams::new(3, f, q0).unwrap();
        let q0r = Rational::from(q0 as i64);
        for w0 in enumerate_by_length(3, 8).unwrap().into_iter().flatten() {
            let l = w0.length() as i64;
            // q0^{f^2 l} * (-1)^l q0^{-2 f l} q0^{-f(f-1) l}
            let f = f as i64;
            let sign = if l % 2 == 0 { 1 } else { -1 };
            let oracle = Rational::from(sign) * &q0r.pow(f * f * l - 2 * f * l - f * (f - 1) * l).unwrap();
            assert_eq!(per_term_value(&w0, 1, &p).unwrap(), oracle);
            assert_eq!(coset_measure(&w0, 0, f as u32, &q0r), coset_measure(&w0, 2, f as u32, &q0r));
        }
    }
    let id = AffinePermutation::identity(3).unwrap();
    assert_eq!(per_term_value(&id, 0, &LevelZeroParams::new(3, 1, 2).unwrap()).unwrap(), Rational::one());
}
