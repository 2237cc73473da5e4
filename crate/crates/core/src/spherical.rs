//! The zonal spherical function `Psi0` and its eigen-equation.
//!
//! `Psi0` is the formal sum over `W = Pi^Z x| W0` with coefficient
//! `(-1/q1)^{l(w0)} chi_pi^{-k}` at `Pi^k w0`. It is infinite, so every check
//! here works on a truncation by length `L` and by `|k| <= K`, and only
//! asserts coefficients whose contributions all lie inside the truncation.
//! The rest are reported as boundary indices.
//!
//! The numeric side also lives here: the scalar value of the matrix
//! coefficient on `w0 Pi^k`, normalized by the pairing `<v, v~>`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::scalar::{LaurentPoly, Rational, Scalar};
use crate::weyl::{check_rank, enumerate_by_length, AffinePermutation, ExtendedWeylElement};

pub const DEFAULT_K_RADIUS: i64 = 1;

/// Parameters of `Psi0` in a chosen scalar mode.
#[derive(Clone, Debug)]
pub struct SphericalParams<S> {
    pub rank: usize,
    pub q1: S,
    pub chi_pi: S,
}

impl SphericalParams<LaurentPoly> {
    /// `q1` formal, `chi_pi` a rational constant.
    pub fn generic(rank: usize, chi_pi: Rational) -> Result<Self> {
        SphericalParams::new(rank, LaurentPoly::variable(), LaurentPoly::constant(chi_pi))
    }

    /// `chi_pi` formal (the Laurent variable), `q1` a rational constant.
    /// Used for the `[Pi]` eigenvalue, where `q1` plays no role but
    /// `chi_pi` should stay symbolic.
    pub fn symbolic_chi_pi(rank: usize, q1: Rational) -> Result<Self> {
        SphericalParams::new(rank, LaurentPoly::constant(q1), LaurentPoly::variable())
    }
}

impl<S: Scalar> SphericalParams<S> {
    pub fn new(rank: usize, q1: S, chi_pi: S) -> Result<Self> {
        check_rank(rank)?;
        q1.inverse()?;
        chi_pi.inverse()?;
        Ok(SphericalParams { rank, q1, chi_pi })
    }

    pub fn algebra(&self) -> HeckeAlgebra<S> {
        HeckeAlgebra::new(self.rank, self.q1.clone()).expect("rank checked")
    }
}

/// Coefficient of `Psi0` at `w = Pi^k w0`: `(-1/q1)^{l(w0)} chi_pi^{-k}`.
pub fn psi0_coefficient<S: Scalar>(w: &ExtendedWeylElement, p: &SphericalParams<S>) -> S {
    let minus_inv_q = -p.q1.inverse().expect("q1 is a unit");
    let len = minus_inv_q.pow(w.length() as i64).expect("unit power");
    len * &p.chi_pi.pow(-w.shift()).expect("chi_pi is a unit")
}

/// Truncation window: lengths `<= max_length`, Pi powers `|k| <= k_radius`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Truncation {
    pub max_length: usize,
    pub k_radius: i64,
}

impl Truncation {
    pub fn new(max_length: usize) -> Self {
        Truncation {
            max_length,
            k_radius: DEFAULT_K_RADIUS,
        }
    }

    pub fn with_k_radius(mut self, k_radius: i64) -> Self {
        self.k_radius = k_radius;
        self
    }
}

/// `Psi0` restricted to a truncation window.
#[derive(Clone, Debug)]
pub struct SphericalTruncation<S> {
    pub truncation: Truncation,
    pub element: HeckeElement<S>,
    /// Finite parts grouped by length, shared by the checks.
    pub layers: Vec<Vec<AffinePermutation>>,
}

impl<S: Scalar> SphericalTruncation<S> {
    pub fn build(p: &SphericalParams<S>, t: Truncation) -> Result<Self> {
        let layers = enumerate_by_length(p.rank, t.max_length)?;
        let mut element = HeckeElement::zero(p.rank);
        for w0 in layers.iter().flatten() {
            for k in -t.k_radius..=t.k_radius {
                let w = ExtendedWeylElement::new(k, w0.clone());
                let c = psi0_coefficient(&w, p);
                element.add_term(w, c);
            }
        }
        Ok(SphericalTruncation {
            truncation: t,
            element,
            layers,
        })
    }

    fn indices(&self) -> impl Iterator<Item = (usize, ExtendedWeylElement)> + '_ {
        let r = self.truncation.k_radius;
        self.layers.iter().enumerate().flat_map(move |(len, layer)| {
            layer.iter().flat_map(move |w0| {
                (-r..=r).map(move |k| (len, ExtendedWeylElement::new(k, w0.clone())))
            })
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenFailure {
    pub element: ExtendedWeylElement,
    pub expected: String,
    pub actual: String,
}

/// Coefficient-wise comparison summary.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EigenReport {
    pub checked: usize,
    pub passed: usize,
    pub boundary_skipped: usize,
    pub failures: Vec<EigenFailure>,
}

impl EigenReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed == self.checked
    }

    fn record<S: Scalar>(&mut self, w: &ExtendedWeylElement, expected: &S, actual: &S) {
        self.checked += 1;
        if expected == actual {
            self.passed += 1;
        } else {
            self.failures.push(EigenFailure {
                element: w.clone(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    pub fn merge(&mut self, other: EigenReport) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.boundary_skipped += other.boundary_skipped;
        self.failures.extend(other.failures);
    }
}

/// Checks `[s_i] * Psi0 = -Psi0` coefficient-wise.
///
/// The product is formed in the Hecke algebra from the truncated sum. The
/// coefficient at `u` only involves `Psi0` at `u` and `s_i u`, so indices of
/// length `< L` are exact and those of length `L` are boundary.
pub fn verify_eigen_generator<S: Scalar>(
    i: usize,
    t: Truncation,
    p: &SphericalParams<S>,
) -> Result<EigenReport> {
    if i >= p.rank {
        return Err(Error::IndexOutOfRange { index: i, rank: p.rank });
    }
    let psi = SphericalTruncation::build(p, t)?;
    let alg = p.algebra();
    let lhs = alg.left_generator_product(i, &psi.element)?;
    let mut report = EigenReport::default();
    for (len, u) in psi.indices() {
        if len >= t.max_length {
            report.boundary_skipped += 1;
            continue;
        }
        let expected = -psi0_coefficient(&u, p);
        report.record(&u, &expected, &lhs.coefficient(&u));
    }
    Ok(report)
}

/// Checks `[Pi] * Psi0 = chi_pi Psi0` and `[Pi]^-1 * Psi0 = chi_pi^-1 Psi0`.
/// Indices whose preimage under the shift leaves the `k` window are boundary.
pub fn verify_eigen_pi<S: Scalar>(t: Truncation, p: &SphericalParams<S>) -> Result<EigenReport> {
    let psi = SphericalTruncation::build(p, t)?;
    let alg = p.algebra();
    let chi_inv = p.chi_pi.inverse()?;
    let mut report = EigenReport::default();
    for (step, eigen) in [(1i64, &p.chi_pi), (-1, &chi_inv)] {
        let lhs = alg.product(&alg.pi_power(step), &psi.element)?;
        for (_, u) in psi.indices() {
            if (u.shift() - step).abs() > t.k_radius {
                report.boundary_skipped += 1;
                continue;
            }
            let expected = psi0_coefficient(&u, p) * eigen;
            report.record(&u, &expected, &lhs.coefficient(&u));
        }
    }
    Ok(report)
}

/// Builds `sum (-1/q1)^{l(w)} chi_pi^{-k} [w][Pi]^k` by Hecke products and
/// compares it with the left-handed truncation, index by index.
pub fn verify_two_sided_form<S: Scalar>(t: Truncation, p: &SphericalParams<S>) -> Result<EigenReport> {
    let psi = SphericalTruncation::build(p, t)?;
    let alg = p.algebra();
    let mut right = HeckeElement::zero(p.rank);
    for w0 in psi.layers.iter().flatten() {
        let w = ExtendedWeylElement::new(0, w0.clone());
        for k in -t.k_radius..=t.k_radius {
            let coeff = psi0_coefficient(&ExtendedWeylElement::new(k, w0.clone()), p);
            let term = alg.product(&alg.basis(&w), &alg.pi_power(k))?;
            right = right.add(&term.scale(&coeff))?;
        }
    }
    let mut report = EigenReport::default();
    for (_, u) in psi.indices() {
        report.record(&u, &psi.element.coefficient(&u), &right.coefficient(&u));
    }
    if right.len() != psi.element.len() {
        report.failures.push(EigenFailure {
            element: ExtendedWeylElement::identity(p.rank)?,
            expected: format!("{} terms", psi.element.len()),
            actual: format!("{} terms", right.len()),
        });
    }
    Ok(report)
}

/// Solves the generator eigen-identities forward from `c(1) = 1`.
///
/// For `w` with left descent `s_j`, the coefficient of `[s_j w]` in
/// `[s_j] * Psi` is `q1 c(w)`, and it must equal `-c(s_j w)`. Every descent
/// gives a constraint; an inconsistency is reported as an error.
pub fn solve_eigen_recurrence<S: Scalar>(
    p: &SphericalParams<S>,
    max_length: usize,
) -> Result<BTreeMap<AffinePermutation, S>> {
    let layers = enumerate_by_length(p.rank, max_length)?;
    let q_inv = p.q1.inverse()?;
    let mut coeff: BTreeMap<AffinePermutation, S> = BTreeMap::new();
    coeff.insert(AffinePermutation::identity(p.rank)?, S::one());
    for layer in layers.iter().skip(1) {
        for w0 in layer {
            let w = ExtendedWeylElement::new(0, w0.clone());
            let mut value: Option<S> = None;
            for j in w.left_descents() {
                let (_, shorter) = w.left_mul_generator(j)?.into_parts();
                let c = -(coeff[&shorter].clone() * &q_inv);
                match &value {
                    None => value = Some(c),
                    Some(v) if *v == c => {}
                    Some(v) => {
                        return Err(Error::InvalidParameter(format!(
                            "inconsistent recurrence at {w0:?}: {v} vs {c}"
                        )))
                    }
                }
            }
            coeff.insert(w0.clone(), value.expect("non-identity has a descent"));
        }
    }
    Ok(coeff)
}

/// Returns true when `n` is a power of a single prime.
pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

/// Numeric parameters of the level-zero situation: `q = q0^2`,
/// `q1 = q^f = q0^{2f}`.
#[derive(Clone, Debug, Serialize)]
pub struct LevelZeroParams {
    pub rank: usize,
    pub f: u32,
    pub q0: u64,
    pub chi_pi: Rational,
    /// Value of the central character at `-1`; 1 in the distinguished case.
    pub omega_minus_one: Rational,
}

impl LevelZeroParams {
    pub fn new(rank: usize, f: u32, q0: u64) -> Result<Self> {
        check_rank(rank)?;
        if f == 0 {
            return Err(Error::InvalidParameter("f must be positive".into()));
        }
        if !is_prime_power(q0) {
            return Err(Error::InvalidParameter(format!("q0 = {q0} is not a prime power")));
        }
        Ok(LevelZeroParams {
            rank,
            f,
            q0,
            chi_pi: Rational::one(),
            omega_minus_one: Rational::one(),
        })
    }

    pub fn with_chi_pi(mut self, chi_pi: Rational) -> Result<Self> {
        chi_pi.inverse()?;
        self.chi_pi = chi_pi;
        Ok(self)
    }

    pub fn with_omega_minus_one(mut self, omega: Rational) -> Result<Self> {
        omega.inverse()?;
        self.omega_minus_one = omega;
        Ok(self)
    }

    pub fn q0(&self) -> Rational {
        Rational::from_integer(self.q0)
    }

    /// `q = q0^2`.
    pub fn q(&self) -> Rational {
        self.q0().pow(2).expect("positive power")
    }

    /// `q1 = q^f`.
    pub fn q1(&self) -> Rational {
        self.q().pow(self.f as i64).expect("positive power")
    }

    /// `q^{-f(f-1)/2} = q0^{-f(f-1)}`, the per-generator normalization.
    pub fn block_scale(&self) -> Rational {
        let f = self.f as i64;
        self.q0().pow(-f * (f - 1)).expect("q0 is a unit")
    }

    pub fn spherical(&self) -> SphericalParams<Rational> {
        SphericalParams::new(self.rank, self.q1(), self.chi_pi.clone()).expect("validated")
    }
}

/// `c(w0 Pi^k) / <v, v~> = (-1/q1)^{l(w0)} q^{-f(f-1) l(w0)/2}`, for any `k`.
pub fn matrix_coefficient_scalar(w0: &AffinePermutation, k: i64, p: &LevelZeroParams) -> Result<Rational> {
    if !p.chi_pi.is_one() {
        return Err(Error::RequiresTrivialChiPi(p.chi_pi.to_string()));
    }
    if w0.rank() != p.rank {
        return Err(Error::RankMismatch {
            left: p.rank,
            right: w0.rank(),
        });
    }
    let _ = k;
    let l = w0.length() as i64;
    let minus_inv_q1 = -p.q1().inverse()?;
    Ok(minus_inv_q1.pow(l)? * p.block_scale().pow(l)?)
}

/// Where a group element sits relative to the union of double cosets
/// `J w J`, `w` in `W`.
#[derive(Clone, Debug)]
pub enum DoubleCoset {
    Weyl(ExtendedWeylElement),
    Outside,
}

/// True iff the matrix coefficient can be nonzero on the given double coset.
pub fn support_check(d: &DoubleCoset) -> bool {
    matches!(d, DoubleCoset::Weyl(_))
}

/// Matrix coefficient value on a double coset, normalized by `<v, v~>`;
/// zero off `J W J`.
pub fn matrix_coefficient_at(d: &DoubleCoset, p: &LevelZeroParams) -> Result<Rational> {
    match d {
        DoubleCoset::Outside => Ok(Rational::zero()),
        DoubleCoset::Weyl(w) => {
            // Pi^k w0 = (Pi^k w0 Pi^-k) Pi^k, and conjugation keeps the length.
            let (k, _) = w.clone().into_parts();
            let conj = w.try_multiply(&crate::weyl::pi_element(w.rank())?.pow(-k))?;
            let (_, w0) = conj.into_parts();
            matrix_coefficient_scalar(&w0, k, p)
        }
    }
}
