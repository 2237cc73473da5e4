//! Exact coefficient rings.
//!
//! Two scalar modes share the [`Scalar`] abstraction: [`Rational`] for
//! numeric work at a fixed residue-field size, and [`LaurentPoly`] for the
//! generic parameter `q1`, where every Hecke algebra identity is checked as
//! an identity in `Q[q1, 1/q1]`. Nothing here rounds.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Commutative ring with exact equality.
///
/// Arithmetic goes through the std operator traits so generic code can write
/// `a.clone() * &b`. Only units may be inverted.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;

    /// Multiplicative inverse; fails with `NonInvertible` on non-units.
    fn inverse(&self) -> Result<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Integer power. Negative exponents require a unit.
    fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut n = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.clone() * &sq;
            }
        }
        Ok(acc)
    }
}

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d = denom.into();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        if other.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn inverse(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::NonInvertible(self.to_string()));
        }
        Ok(Rational(self.0.recip()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_rational_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_rational_binop!(Add, add);
forward_rational_binop!(Sub, sub);
forward_rational_binop!(Mul, mul);
// Panics on a zero divisor, like BigRational; use `checked_div` otherwise.
forward_rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Laurent polynomial in one variable with rational coefficients.
///
/// The variable is printed as `q1`. Zero coefficients are never stored, so
/// structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    /// The variable itself.
    pub fn variable() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coefficient(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Substitutes `x` for the variable.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() {
            if self.min_exponent().is_some_and(|e| e < 0) {
                return Err(Error::EvaluationAtZero(self.to_string()));
            }
            return Ok(self.coefficient(0));
        }
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            acc = acc + c * &x.pow(e)?;
        }
        Ok(acc)
    }

    fn leading(&self) -> Option<(i64, &Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    fn require_polynomial(&self) -> Result<()> {
        match self.min_exponent() {
            Some(e) if e < 0 => Err(Error::InvalidParameter(format!(
                "{self} has negative exponents; polynomial operation required"
            ))),
            _ => Ok(()),
        }
    }

    /// Euclidean division of ordinary polynomials (no negative exponents).
    pub fn div_rem(&self, divisor: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        self.require_polynomial()?;
        divisor.require_polynomial()?;
        let (dd, dc) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dc = dc.clone();
        let mut quot = LaurentPoly::default();
        let mut rem = self.clone();
        while let Some((rd, rc)) = rem.leading() {
            if rd < dd {
                break;
            }
            let t = LaurentPoly::monomial(rc / &dc, rd - dd);
            rem = rem - &(t.clone() * divisor);
            quot = quot + &t;
        }
        Ok((quot, rem))
    }

    /// Monic greatest common divisor of two polynomials.
    pub fn gcd(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.terms.is_empty() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        match a.leading() {
            None => Ok(a),
            Some((_, lc)) => {
                let inv = lc.inverse()?;
                Ok(a * &LaurentPoly::constant(inv))
            }
        }
    }

    /// Applies `f` to every coefficient, e.g. to map into another ring by
    /// substitution.
    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }

    fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_rational(r: Rational) -> Self {
        LaurentPoly::constant(r)
    }

    fn inverse(&self) -> Result<Self> {
        match self.terms.iter().next() {
            Some((&e, c)) if self.terms.len() == 1 => Ok(LaurentPoly::monomial(c.inverse()?, -e)),
            _ => Err(Error::NonInvertible(self.to_string())),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if mag.is_integer() { mag.numer().to_string() } else { mag.to_string() };
            match e {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if coeff != "1" {
                        write!(f, "{coeff}*")?;
                    }
                    if e == 1 {
                        write!(f, "q1")?;
                    } else {
                        write!(f, "q1^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<i64, Rational>::deserialize(deserializer)?;
        Ok(LaurentPoly::from_terms(raw))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self + &rhs
    }
}

impl<'a> Add<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self - &rhs
    }
}

impl<'a> Sub<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self * &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}
