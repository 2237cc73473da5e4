//! The generic affine Hecke algebra `H(e, q1)` on the basis `[w]`, `w` in the
//! extended affine Weyl group.
//!
//! Products are computed the way the algebra is presented: a basis element
//! `[Pi^k w0]` is `[Pi]^k [s_{i_1}] ... [s_{i_l}]` for a reduced word of `w0`,
//! and each generator is pushed onto the right factor with
//!
//! ```text
//! [s_i][w] = [s_i w]                      if l(s_i w) = l(w) + 1
//! [s_i][w] = q1 [s_i w] + (q1 - 1) [w]    if l(s_i w) = l(w) - 1
//! ```
//!
//! while `[Pi][Pi^k w0] = [Pi^{k+1} w0]`.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, Rational, Scalar};
use crate::weyl::{self, check_rank, ExtendedWeylElement};

/// Finite formal sum `sum c_w [w]`.
#[derive(Clone, PartialEq, Debug)]
pub struct HeckeElement<S> {
    rank: usize,
    terms: BTreeMap<ExtendedWeylElement, S>,
}

impl<S: Scalar> HeckeElement<S> {
    pub fn zero(rank: usize) -> Self {
        HeckeElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtendedWeylElement, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &ExtendedWeylElement) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c [w]` in place.
    pub fn add_term(&mut self, w: ExtendedWeylElement, c: S) {
        debug_assert_eq!(w.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let sum = old + &c;
                if !sum.is_zero() {
                    self.terms.insert(w, sum);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = HeckeElement::zero(self.rank);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.clone() * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Applies a coefficient map, e.g. a specialization of `q1`.
    pub fn map_coefficients<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<HeckeElement<T>> {
        let mut out = HeckeElement::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }
}

impl HeckeElement<LaurentPoly> {
    /// Substitutes a rational value for `q1` in every coefficient.
    pub fn specialize(&self, q1: &Rational) -> Result<HeckeElement<Rational>> {
        self.map_coefficients(|c| c.evaluate(q1))
    }
}

#[derive(Serialize)]
struct TermRecord<'a, S> {
    element: &'a ExtendedWeylElement,
    coefficient: &'a S,
}

impl<S: Serialize> Serialize for HeckeElement<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (element, coefficient) in &self.terms {
            seq.serialize_element(&TermRecord { element, coefficient })?;
        }
        seq.end()
    }
}

/// `H(e, q1)` with a fixed value (or the formal variable) for `q1`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra<S> {
    rank: usize,
    q1: S,
}

impl HeckeAlgebra<LaurentPoly> {
    /// The algebra over `Q[q1, 1/q1]` with `q1` formal.
    pub fn generic(rank: usize) -> Result<Self> {
        HeckeAlgebra::new(rank, LaurentPoly::variable())
    }
}

impl<S: Scalar> HeckeAlgebra<S> {
    pub fn new(rank: usize, q1: S) -> Result<Self> {
        check_rank(rank)?;
        Ok(HeckeAlgebra { rank, q1 })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q1(&self) -> &S {
        &self.q1
    }

    pub fn basis(&self, w: &ExtendedWeylElement) -> HeckeElement<S> {
        let mut h = HeckeElement::zero(self.rank);
        h.add_term(w.clone(), S::one());
        h
    }

    pub fn one(&self) -> HeckeElement<S> {
        self.basis(&ExtendedWeylElement::identity(self.rank).expect("rank checked"))
    }

    pub fn generator(&self, i: usize) -> Result<HeckeElement<S>> {
        Ok(self.basis(&weyl::generator(self.rank, i)?))
    }

    /// `[Pi]^k`.
    pub fn pi_power(&self, k: i64) -> HeckeElement<S> {
        self.basis(&weyl::pi_element(self.rank).expect("rank checked").pow(k))
    }

    /// `[s_i] * h`, the two-case rule extended linearly.
    pub fn left_generator_product(&self, i: usize, h: &HeckeElement<S>) -> Result<HeckeElement<S>> {
        let mut out = HeckeElement::zero(self.rank);
        let q_minus_one = self.q1.clone() - S::one();
        for (w, c) in &h.terms {
            let sw = w.left_mul_generator(i)?;
            if sw.length() > w.length() {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(sw, self.q1.clone() * c);
                out.add_term(w.clone(), q_minus_one.clone() * c);
            }
        }
        Ok(out)
    }

    /// `[Pi]^k * h`.
    pub fn left_pi_product(&self, k: i64, h: &HeckeElement<S>) -> HeckeElement<S> {
        let mut out = HeckeElement::zero(self.rank);
        for (w, c) in &h.terms {
            let (shift, w0) = w.clone().into_parts();
            out.add_term(ExtendedWeylElement::new(shift + k, w0), c.clone());
        }
        out
    }

    /// `[u] * h`, peeling a reduced word of `u` from the right.
    pub fn basis_product(&self, u: &ExtendedWeylElement, h: &HeckeElement<S>) -> Result<HeckeElement<S>> {
        let mut acc = h.clone();
        for &i in u.reduced_word().iter().rev() {
            acc = self.left_generator_product(i, &acc)?;
        }
        Ok(self.left_pi_product(u.shift(), &acc))
    }

    pub fn product(&self, a: &HeckeElement<S>, b: &HeckeElement<S>) -> Result<HeckeElement<S>> {
        for r in [a.rank, b.rank] {
            if r != self.rank {
                return Err(Error::RankMismatch {
                    left: self.rank,
                    right: r,
                });
            }
        }
        let mut out = HeckeElement::zero(self.rank);
        for (u, c) in &a.terms {
            let part = self.basis_product(u, b)?;
            for (w, d) in part.terms {
                out.add_term(w, c.clone() * &d);
            }
        }
        Ok(out)
    }

    /// Product of several factors, left to right.
    pub fn product_all(&self, factors: &[&HeckeElement<S>]) -> Result<HeckeElement<S>> {
        let mut acc = self.one();
        for f in factors {
            acc = self.product(&acc, f)?;
        }
        Ok(acc)
    }
}

/// The one-dimensional character `chi` of the Hecke algebra, fixed by
/// `chi([s_i]) = -1` and a unit value `chi([Pi])`.
#[derive(Clone, Debug)]
pub struct CharacterData<S> {
    rank: usize,
    chi_pi: S,
    chi_pi_inv: S,
}

impl<S: Scalar> CharacterData<S> {
    pub fn new(rank: usize, chi_pi: S) -> Result<Self> {
        check_rank(rank)?;
        let chi_pi_inv = chi_pi.inverse()?;
        Ok(CharacterData {
            rank,
            chi_pi,
            chi_pi_inv,
        })
    }

    /// The distinguished, odd-`e` normalization `chi([Pi]) = 1`.
    pub fn trivial_pi(rank: usize) -> Result<Self> {
        CharacterData::new(rank, S::one())
    }

    pub fn chi_pi(&self) -> &S {
        &self.chi_pi
    }

    /// `chi([Pi^k w0]) = chi_pi^k (-1)^{l(w0)}`.
    pub fn on_basis(&self, w: &ExtendedWeylElement) -> S {
        let k = w.shift();
        let base = if k < 0 { &self.chi_pi_inv } else { &self.chi_pi };
        let mag = base.pow(k.abs()).expect("non-negative power");
        if w.length().is_multiple_of(2) {
            mag
        } else {
            -mag
        }
    }

    pub fn chi(&self, h: &HeckeElement<S>) -> Result<S> {
        if h.rank != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: h.rank,
            });
        }
        Ok(h.terms.iter().fold(S::zero(), |acc, (w, c)| acc + self.on_basis(w) * c))
    }
}

/// Outcome of checking one relation family of the presentation.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub statement: String,
    /// Number of index instances tested; zero means the family is vacuous.
    pub instances: usize,
    pub failures: Vec<String>,
    /// True for identities that follow from the listed relations rather
    /// than belonging to the presentation itself.
    pub derived: bool,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn vacuous(&self) -> bool {
        self.instances == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub rank: usize,
    pub relations: Vec<RelationCheck>,
    pub all_passed: bool,
}

struct Checker<'a> {
    alg: &'a HeckeAlgebra<LaurentPoly>,
    current: RelationCheck,
}

impl Checker<'_> {
    fn expect_eq(
        &mut self,
        label: String,
        lhs: &[&HeckeElement<LaurentPoly>],
        rhs: &[&HeckeElement<LaurentPoly>],
    ) -> Result<()> {
        self.current.instances += 1;
        let l = self.alg.product_all(lhs)?;
        let r = self.alg.product_all(rhs)?;
        if l != r {
            self.current.failures.push(label);
        }
        Ok(())
    }

    fn start(&mut self, name: &str, statement: &str, derived: bool) -> RelationCheck {
        std::mem::replace(
            &mut self.current,
            RelationCheck {
                name: name.to_string(),
                statement: statement.to_string(),
                instances: 0,
                failures: Vec::new(),
                derived,
            },
        )
    }
}

/// Evaluates the defining relations (i)-(vi) of `H(e, q1)` with `q1`
/// formal, plus the relations involving `[s_0]` that follow from them.
pub fn verify_presentation(rank: usize) -> Result<PresentationReport> {
    let alg = HeckeAlgebra::generic(rank)?;
    let e = rank;
    let s: Vec<_> = (0..e).map(|i| alg.generator(i)).collect::<Result<_>>()?;
    let pi = alg.pi_power(1);
    let pi_inv = alg.pi_power(-1);
    let one = alg.one();
    let q1 = HeckeElement::zero(e).add(&one.scale(alg.q1()))?;

    let mut ck = Checker {
        alg: &alg,
        current: RelationCheck {
            name: String::new(),
            statement: String::new(),
            instances: 0,
            failures: Vec::new(),
            derived: false,
        },
    };
    let mut relations = Vec::new();

    ck.start("(i)", "[Pi][Pi^-1] = [Pi^-1][Pi] = 1", false);
    ck.expect_eq("[Pi][Pi^-1]".into(), &[&pi, &pi_inv], &[&one])?;
    ck.expect_eq("[Pi^-1][Pi]".into(), &[&pi_inv, &pi], &[&one])?;

    relations.push(ck.start("(ii)", "([s_i] + 1)([s_i] - q1) = 0, 1 <= i <= e-1", false));
    let zero = HeckeElement::zero(e);
    for (i, si) in s.iter().enumerate().skip(1) {
        let a = si.add(&one)?;
        let b = si.sub(&q1)?;
        ck.expect_eq(format!("i={i}"), &[&a, &b], &[&zero])?;
    }

    relations.push(ck.start("(iii)", "[Pi]^2 [s_1] = [s_{e-1}] [Pi]^2", false));
    ck.expect_eq("".into(), &[&pi, &pi, &s[1]], &[&s[e - 1], &pi, &pi])?;

    relations.push(ck.start("(iv)", "[Pi][s_i] = [s_{i-1}][Pi], 2 <= i <= e-1", false));
    for i in 2..e {
        ck.expect_eq(format!("i={i}"), &[&pi, &s[i]], &[&s[i - 1], &pi])?;
    }

    relations.push(ck.start("(v)", "[s_i][s_{i+1}][s_i] = [s_{i+1}][s_i][s_{i+1}], 1 <= i <= e-2", false));
    for i in 1..e.saturating_sub(1) {
        ck.expect_eq(
            format!("i={i}"),
            &[&s[i], &s[i + 1], &s[i]],
            &[&s[i + 1], &s[i], &s[i + 1]],
        )?;
    }

    relations.push(ck.start("(vi)", "[s_i][s_j] = [s_j][s_i], 1 <= i, j <= e-1, |i-j| >= 2", false));
    for i in 1..e {
        for j in (i + 2)..e {
            ck.expect_eq(format!("i={i},j={j}"), &[&s[i], &s[j]], &[&s[j], &s[i]])?;
        }
    }

    relations.push(ck.start("s0-def", "[s_0] = [Pi][s_1][Pi]^-1", true));
    ck.expect_eq("".into(), &[&s[0]], &[&pi, &s[1], &pi_inv])?;

    relations.push(ck.start("s0-quadratic", "([s_0] + 1)([s_0] - q1) = 0", true));
    let a = s[0].add(&one)?;
    let b = s[0].sub(&q1)?;
    ck.expect_eq("".into(), &[&a, &b], &[&zero])?;

    relations.push(ck.start("s0-braid", "[s_0][s_j][s_0] = [s_j][s_0][s_j], j in {1, e-1}, e >= 3", true));
    if e >= 3 {
        let mut js = vec![1, e - 1];
        js.dedup();
        for j in js {
            ck.expect_eq(format!("j={j}"), &[&s[0], &s[j], &s[0]], &[&s[j], &s[0], &s[j]])?;
        }
    }

    relations.push(ck.start("s0-commute", "[s_0][s_j] = [s_j][s_0], 2 <= j <= e-2", true));
    for j in 2..e.saturating_sub(1) {
        ck.expect_eq(format!("j={j}"), &[&s[0], &s[j]], &[&s[j], &s[0]])?;
    }

    relations.push(ck.current);
    let all_passed = relations.iter().all(RelationCheck::passed);
    Ok(PresentationReport {
        rank,
        relations,
        all_passed,
    })
}
