//! Place operators, growth series and the finite pairing.

use hecke_core::distinction::{distinction_integral, growth_bfs, growth_closed_form, poincare_closed_form, poincare_value};
use hecke_core::gelfand::{check_pairing, fixed_space, shipped_catalog};
use hecke_core::tensor::{apply, gamma_operator, t_operator};
use hecke_core::{LevelZeroParams, PlaceOperator, Rational, RationalMatrix, Scalar, TensorVector};
use proptest::prelude::*;

fn operator(e: usize, word: &[usize], scale: i64) -> PlaceOperator {
    word.iter().fold(
        gamma_operator(e).unwrap().scaled(&Rational::from(scale)),
        |acc, &i| acc.compose(&t_operator(i % e, e).unwrap()).unwrap(),
    )
}

proptest! {
    #[test]
    fn apply_respects_composition(
        w1 in prop::collection::vec(0usize..4, 0..5),
        w2 in prop::collection::vec(0usize..4, 0..5),
        data in prop::collection::vec(-5i64..5, 3),
        s in 1i64..4,
    ) {
        let e = 4;
        let a = operator(e, &w1, s);
        let b = operator(e, &w2, 1);
        let v = TensorVector::pure(&[
            data.iter().map(|&x| Rational::from(x)).collect(),
            vec![Rational::from(1), Rational::from(0), Rational::from(2)],
            data.iter().rev().map(|&x| Rational::from(x)).collect(),
            vec![Rational::from(-1), Rational::from(1), Rational::from(1)],
        ]).unwrap();
        let lhs = apply(&a.compose(&b).unwrap(), &v).unwrap();
        let rhs = apply(&a, &apply(&b, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poincare_positive_inside_interval(n in -99i64..100, e in 2usize..7) {
        let x = Rational::new(n, 100).unwrap();
        prop_assert!(poincare_value(e, &x).unwrap().is_positive());
    }
}

#[test]
fn growth_series_agree_to_degree_twelve() {
    for e in 2..5 {
        let bfs = growth_bfs(e, 12).unwrap();
        assert_eq!(bfs.counts, growth_closed_form(e, 12).unwrap().counts);
        assert_eq!(bfs.counts[0], 1);
        assert_eq!(bfs.counts[1], e as u64);
    }
}

#[test]
fn closed_form_value_at_zero_is_one() {
    for e in 2..8 {
        let rf = poincare_closed_form(e).unwrap();
        assert_eq!(rf.evaluate(&Rational::zero()).unwrap(), Rational::one());
    }
}

#[test]
fn tail_bound_shrinks_and_dominates_error() {
    let p = LevelZeroParams::new(3, 1, 2).unwrap();
    let mut prev: Option<Rational> = None;
    for l in [0, 2, 4, 8, 12] {
        let rep = distinction_integral(&p, l).unwrap();
        assert!(rep.ok(), "{rep:?}");
        if let Some(prev) = prev {
            assert!(rep.tail_bound < prev);
        }
        prev = Some(rep.tail_bound);
    }
}

#[test]
fn shipped_pairs_satisfy_the_pairing_statement() {
    for entry in shipped_catalog().unwrap() {
        let rep = entry.to_rep().unwrap();
        let report = check_pairing(&rep, &entry.subgroup).unwrap();
        assert_eq!(report.commutant_dimension, 1, "{}", entry.group);
        assert!(report.ok(), "{report:?}");
        if report.dim_fixed_v == 1 && report.dim_fixed_vdual == 1 {
            assert_eq!(report.pairing_nonzero, Some(true));
        }
    }
}

#[test]
fn rescaled_fixed_vectors_keep_nonvanishing() {
    for entry in shipped_catalog().unwrap() {
        let rep = entry.to_rep().unwrap();
        let v = fixed_space(&rep, &entry.subgroup).unwrap();
        let vt = fixed_space(&rep.dual(), &entry.subgroup).unwrap();
        if v.len() != 1 {
            continue;
        }
        let dot = |a: &[Rational], b: &[Rational]| {
            a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + &(x.clone() * y))
        };
        let base = dot(&vt[0], &v[0]);
        for c in [Rational::from(-3), Rational::new(2, 7).unwrap()] {
            let scaled: Vec<Rational> = v[0].iter().map(|x| x.clone() * &c).collect();
            let value = dot(&vt[0], &scaled);
            assert_eq!(value.is_zero(), base.is_zero());
        }
    }
}

#[test]
fn averaging_commutes_with_subgroup() {
    for entry in shipped_catalog().unwrap() {
        let rep = entry.to_rep().unwrap();
        let p = rep.averaging_operator(&entry.subgroup).unwrap();
        assert_eq!(p.mul(&p).unwrap(), p);
        for &k in &entry.subgroup {
            let g: &RationalMatrix = &rep.elements()[k];
            assert_eq!(g.mul(&p).unwrap(), p.mul(g).unwrap());
        }
    }
}
