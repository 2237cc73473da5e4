//! Growth series of `W0`, its closed form, and the distinction integral as a
//! double-coset sum.
//!
//! The closed form is the product over `i = 1..e-1` of
//! `(1 - X^{i+1}) / ((1 - X)(1 - X^i))`. Each factor is `[i+1]_X / (1 - X^i)`
//! and is positive on `(-1, 1)`.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, Rational, Scalar};
use crate::spherical::{matrix_coefficient_scalar, LevelZeroParams};
use crate::weyl::{check_rank, enumerate_by_length, AffinePermutation};

/// `num / den` in one variable, reduced, with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den)?;
        let (mut num, r1) = num.div_rem(&g)?;
        let (mut den, r2) = den.div_rem(&g)?;
        debug_assert!(r1.is_zero() && r2.is_zero());
        let c0 = den.coefficient(0);
        if !c0.is_zero() {
            let inv = LaurentPoly::constant(c0.inverse()?);
            num = num * &inv;
            den = den * &inv;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.evaluate(x)?;
        if d.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        self.num.evaluate(x)?.checked_div(&d)
    }

    /// Power series coefficients `a_0 .. a_n` at `X = 0`.
    pub fn maclaurin(&self, n: usize) -> Result<Vec<Rational>> {
        let d0 = self.den.coefficient(0);
        if d0.is_zero() {
            return Err(Error::Pole("0".into()));
        }
        let d0_inv = d0.inverse()?;
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = self.num.coefficient(m as i64);
            for (j, prev) in out.iter().enumerate() {
                let dj = self.den.coefficient((m - j) as i64);
                if !dj.is_zero() {
                    acc = acc - &(dj * prev);
                }
            }
            out.push(acc * &d0_inv);
        }
        Ok(out)
    }
}

fn one_minus_x_pow(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(0, Rational::one()), (n, -Rational::one())])
}

pub fn poincare_closed_form(e: usize) -> Result<RationalFunction> {
    check_rank(e)?;
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for i in 1..e as i64 {
        num = num * &one_minus_x_pow(i + 1);
        den = den * &(one_minus_x_pow(1) * &one_minus_x_pow(i));
    }
    RationalFunction::new(num, den)
}

/// `P_{W0}(x)` for `-1 < x < 1`.
pub fn poincare_value(e: usize, x: &Rational) -> Result<Rational> {
    let rf = poincare_closed_form(e)?;
    if rf.den.evaluate(x)?.is_zero() {
        return Err(Error::Pole(x.to_string()));
    }
    if x.abs() >= Rational::one() {
        return Err(Error::OutsideConvergence(x.to_string()));
    }
    rf.evaluate(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Bfs,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthSeries {
    pub e: usize,
    pub counts: Vec<u64>,
    pub provenance: Provenance,
}

pub fn growth_bfs(e: usize, max_length: usize) -> Result<GrowthSeries> {
    let layers = enumerate_by_length(e, max_length)?;
    Ok(GrowthSeries {
        e,
        counts: layers.iter().map(|l| l.len() as u64).collect(),
        provenance: Provenance::Bfs,
    })
}

pub fn growth_closed_form(e: usize, max_length: usize) -> Result<GrowthSeries> {
    let coeffs = poincare_closed_form(e)?.maclaurin(max_length)?;
    let counts = coeffs
        .iter()
        .map(|c| {
            if c.is_integer() && !c.is_negative() {
                c.numer().to_u64().ok_or_else(|| Error::InvalidParameter(format!("growth coefficient {c} overflows")))
            } else {
                Err(Error::InvalidParameter(format!("non-integral growth coefficient {c}")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthSeries {
        e,
        counts,
        provenance: Provenance::ClosedForm,
    })
}

/// Haar volume of `J0 w0 Pi^k J0` with `J0` of volume 1: `q0^{f^2 l(w0)}`.
pub fn coset_measure(w0: &AffinePermutation, _k: i64, f: u32, q0: &Rational) -> Rational {
    let exp = (f as i64) * (f as i64) * w0.length() as i64;
    q0.pow(exp).expect("non-negative exponent")
}

/// Measure times normalized matrix coefficient for one double coset.
pub fn per_term_value(w0: &AffinePermutation, k: i64, p: &LevelZeroParams) -> Result<Rational> {
    let m = coset_measure(w0, k, p.f, &p.q0());
    Ok(m * &matrix_coefficient_scalar(w0, k, p)?)
}

/// `-1 / q0^f`.
pub fn distinction_point(p: &LevelZeroParams) -> Rational {
    -p.q0().pow(p.f as i64).expect("positive").inverse().expect("q0 > 0")
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralReport {
    pub e: usize,
    pub f: u32,
    pub q0: u64,
    pub chi_pi: Rational,
    #[serde(rename = "L")]
    pub max_length: usize,
    pub terms: usize,
    pub partial_sum: Rational,
    pub closed_form: Rational,
    pub tail_bound: Rational,
    pub abs_error: Rational,
    pub per_term_ok: bool,
    pub k_independent: bool,
    pub within_tail_bound: bool,
}

impl IntegralReport {
    pub fn ok(&self) -> bool {
        self.per_term_ok && self.k_independent && self.within_tail_bound
    }
}

/// Truncated `sum_{k=0}^{e-1} sum_{l(w0) <= L} mu(J0 w0 Pi^k J0) c(w0 Pi^k)`,
/// normalized by `<v, v~>`, against `e P(-1/q0^f)`.
pub fn distinction_integral(p: &LevelZeroParams, max_length: usize) -> Result<IntegralReport> {
    let e = p.rank;
    if e.is_multiple_of(2) {
        return Err(Error::RequiresOddE(e));
    }
    if !p.chi_pi.is_one() {
        return Err(Error::RequiresTrivialChiPi(p.chi_pi.to_string()));
    }
    let x = distinction_point(p);
    let layers = enumerate_by_length(e, max_length)?;
    let mut partial = Rational::zero();
    let mut k0_sum = Rational::zero();
    let mut per_term_ok = true;
    let mut terms = 0;
    for (len, layer) in layers.iter().enumerate() {
        let expected = x.pow(len as i64)?;
        for w0 in layer {
            for k in 0..e as i64 {
                let v = per_term_value(w0, k, p)?;
                per_term_ok &= v == expected;
                if k == 0 {
                    k0_sum = k0_sum + &v;
                }
                partial = partial + &v;
                terms += 1;
            }
        }
    }
    let e_rat = Rational::from_integer(e as i64);
    let closed = e_rat.clone() * &poincare_value(e, &x)?;

    // e * sum_{l > L} N(l) r^l with r = |x|, from the closed form.
    let r = x.abs();
    let counts = poincare_closed_form(e)?.maclaurin(max_length)?;
    let head = counts
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (l, n)| acc + &(n.clone() * &r.pow(l as i64).expect("power")));
    let tail_bound = e_rat.clone() * &(poincare_value(e, &r)? - &head);
    let abs_error = (partial.clone() - &closed).abs();
    Ok(IntegralReport {
        e,
        f: p.f,
        q0: p.q0,
        chi_pi: p.chi_pi.clone(),
        max_length,
        terms,
        k_independent: partial == e_rat * &k0_sum,
        within_tail_bound: abs_error < tail_bound,
        partial_sum: partial,
        closed_form: closed,
        tail_bound,
        abs_error,
        per_term_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NonvanishingSample {
    pub x: Rational,
    pub value: Rational,
    pub positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonvanishingReport {
    pub e: usize,
    pub samples: Vec<NonvanishingSample>,
    pub all_positive: bool,
}

pub fn nonvanishing_scan(e: usize, samples: &[Rational]) -> Result<NonvanishingReport> {
    let samples = samples
        .iter()
        .map(|x| {
            let value = poincare_value(e, x)?;
            Ok(NonvanishingSample {
                x: x.clone(),
                positive: value.is_positive(),
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NonvanishingReport {
        e,
        all_positive: samples.iter().all(|s| s.positive),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::word_element;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn poly(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i64, Rational::from(c))))
    }

    #[test]
    fn closed_forms_small_rank() {
        let p2 = poincare_closed_form(2).unwrap();
        assert_eq!(p2.num, poly(&[1, 1]));
        assert_eq!(p2.den, poly(&[1, -1]));
        let p3 = poincare_closed_form(3).unwrap();
        assert_eq!(p3.num, poly(&[1, 1, 1]));
        assert_eq!(p3.den, poly(&[1, -2, 1]));
    }

    #[test]
    fn growth_matches_closed_form() {
        for e in 2..5 {
            assert_eq!(growth_bfs(e, 12).unwrap().counts, growth_closed_form(e, 12).unwrap().counts);
        }
        assert_eq!(growth_bfs(3, 4).unwrap().counts, vec![1, 3, 6, 9, 12]);
        assert_eq!(growth_bfs(2, 4).unwrap().counts, vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn poincare_values() {
        assert_eq!(poincare_value(2, &r(-1, 2)).unwrap(), r(1, 3));
        assert_eq!(poincare_value(3, &r(-1, 2)).unwrap(), r(1, 3));
        assert_eq!(poincare_value(3, &r(-1, 3)).unwrap(), r(7, 16));
        for e in 2..7 {
            assert_eq!(poincare_value(e, &Rational::zero()).unwrap(), Rational::one());
        }
        assert!(matches!(poincare_value(3, &Rational::one()), Err(Error::Pole(_))));
        assert!(matches!(poincare_value(3, &r(-3, 2)), Err(Error::OutsideConvergence(_))));
    }

    #[test]
    fn measures() {
        let id = AffinePermutation::identity(3).unwrap();
        assert_eq!(coset_measure(&id, 4, 2, &r(3, 1)), Rational::one());
        let w3 = word_element(3, &[1, 2, 0]).unwrap().into_parts().1;
        assert_eq!(w3.length(), 3);
        assert_eq!(coset_measure(&w3, 0, 1, &r(2, 1)), r(8, 1));
        let w2 = word_element(3, &[1, 2]).unwrap().into_parts().1;
        assert_eq!(coset_measure(&w2, 1, 2, &r(3, 1)), r(6561, 1));
    }

    #[test]
    fn per_term_examples() {
        let s1 = word_element(3, &[1]).unwrap().into_parts().1;
        let p1 = LevelZeroParams::new(3, 1, 2).unwrap();
        assert_eq!(per_term_value(&s1, 0, &p1).unwrap(), r(-1, 2));
        let p2 = LevelZeroParams::new(3, 2, 2).unwrap();
        assert_eq!(per_term_value(&s1, 2, &p2).unwrap(), r(-1, 4));
    }

    #[test]
    fn integral_examples() {
        let rep = distinction_integral(&LevelZeroParams::new(3, 1, 2).unwrap(), 20).unwrap();
        assert_eq!(rep.closed_form, Rational::one());
        assert!(rep.ok(), "{rep:?}");
        let rep = distinction_integral(&LevelZeroParams::new(3, 1, 3).unwrap(), 8).unwrap();
        assert_eq!(rep.closed_form, r(21, 16));
        assert!(rep.ok());
        let rep0 = distinction_integral(&LevelZeroParams::new(5, 1, 2).unwrap(), 0).unwrap();
        assert_eq!(rep0.partial_sum, r(5, 1));
    }

    #[test]
    fn integral_rejects_even_and_twisted() {
        assert!(matches!(
            distinction_integral(&LevelZeroParams::new(4, 1, 2).unwrap(), 3),
            Err(Error::RequiresOddE(4))
        ));
        let p = LevelZeroParams::new(3, 1, 2).unwrap().with_chi_pi(r(2, 1)).unwrap();
        assert!(matches!(distinction_integral(&p, 3), Err(Error::RequiresTrivialChiPi(_))));
    }

    #[test]
    fn nonvanishing_examples() {
        let xs = [r(-9, 10), r(-1, 2), Rational::zero(), r(1, 2), r(9, 10)];
        assert!(nonvanishing_scan(3, &xs).unwrap().all_positive);
    }
}
