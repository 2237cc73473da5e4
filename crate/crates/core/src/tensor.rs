//! Place-permutation operators on an `e`-fold tensor power.
//!
//! An operator is a pair (slot permutation, scalar). The content of slot `s`
//! moves to slot `perm(s)`, so `Gamma` with `perm(j) = j + 1` sends
//! `(a, b, c)` to `(c, a, b)`. Composition is function composition.
//! `Ev(w)` is assembled from the `t_i` along a reduced word and lands on the
//! image of `w` in `S_e`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::spherical::LevelZeroParams;
use crate::weyl::{check_rank, ExtendedWeylElement, Permutation};

pub const DEFAULT_TENSOR_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaceOperator {
    pub perm: Permutation,
    pub scale: Rational,
}

impl PlaceOperator {
    pub fn identity(e: usize) -> Self {
        PlaceOperator {
            perm: Permutation::identity(e),
            scale: Rational::one(),
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.degree()
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &PlaceOperator) -> Result<PlaceOperator> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(PlaceOperator {
            perm: self.perm.compose(&other.perm),
            scale: self.scale.clone() * &other.scale,
        })
    }

    pub fn inverse(&self) -> Result<PlaceOperator> {
        Ok(PlaceOperator {
            perm: self.perm.inverse(),
            scale: self.scale.inverse()?,
        })
    }

    pub fn pow(&self, n: i64) -> Result<PlaceOperator> {
        Ok(PlaceOperator {
            perm: self.perm.pow(n),
            scale: self.scale.pow(n)?,
        })
    }

    pub fn scaled(&self, c: &Rational) -> PlaceOperator {
        PlaceOperator {
            perm: self.perm.clone(),
            scale: self.scale.clone() * c,
        }
    }
}

/// `t_i`: swaps slots `i` and `i + 1` for `i >= 1`, slots `1` and `e` for `i = 0`.
pub fn t_operator(i: usize, e: usize) -> Result<PlaceOperator> {
    check_rank(e)?;
    if i >= e {
        return Err(Error::IndexOutOfRange { index: i, rank: e });
    }
    let perm = if i == 0 {
        Permutation::transposition(e, 1, e)
    } else {
        Permutation::transposition(e, i, i + 1)
    };
    Ok(PlaceOperator {
        perm,
        scale: Rational::one(),
    })
}

/// `Gamma`: the cycle moving every slot's content one step right.
pub fn gamma_operator(e: usize) -> Result<PlaceOperator> {
    check_rank(e)?;
    let images: Vec<usize> = (1..=e).map(|j| j % e + 1).collect();
    Ok(PlaceOperator {
        perm: Permutation::from_images(&images)?,
        scale: Rational::one(),
    })
}

/// Scalar attached to one `t_i` factor: `omega(-1) q^{-f(f-1)/2}`.
fn step_scale(p: &LevelZeroParams) -> Rational {
    p.omega_minus_one.clone() * &p.block_scale()
}

/// `Ev` along an explicit word `s_{i_1} ... s_{i_l}`, preceded by `Pi^k`.
pub fn ev_along_word(k: i64, word: &[usize], p: &LevelZeroParams) -> Result<PlaceOperator> {
    let e = p.rank;
    // Pi acts as Gamma^{-1}: both send slot j to j - 1 in S_e.
    let mut op = gamma_operator(e)?.pow(-k)?;
    let step = step_scale(p);
    for &i in word {
        op = op.compose(&t_operator(i, e)?.scaled(&step))?;
    }
    Ok(op)
}

/// `Ev(Pi^k w0) = Gamma^{-k} o t_{i_1} o ... o t_{i_l}` scaled by
/// `(omega(-1) q^{-f(f-1)/2})^{l(w0)}`, for a reduced word of `w0`.
pub fn ev(w: &ExtendedWeylElement, p: &LevelZeroParams) -> Result<PlaceOperator> {
    if w.rank() != p.rank {
        return Err(Error::RankMismatch {
            left: p.rank,
            right: w.rank(),
        });
    }
    ev_along_word(w.shift(), &w.reduced_word(), p)
}

/// Dense coordinates of a vector in `(Q^d)^{(x) e}`; slot 1 is the most
/// significant index digit.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    e: usize,
    d: usize,
    data: Vec<Rational>,
}

fn checked_size(e: usize, d: usize, cap: usize) -> Result<usize> {
    let mut size: usize = 1;
    for _ in 0..e {
        size = size.checked_mul(d).filter(|&s| s <= cap).ok_or(Error::CapExceeded { limit: cap })?;
    }
    Ok(size)
}

impl TensorVector {
    pub fn zero(e: usize, d: usize) -> Result<Self> {
        Self::zero_with_cap(e, d, DEFAULT_TENSOR_CAP)
    }

    pub fn zero_with_cap(e: usize, d: usize, cap: usize) -> Result<Self> {
        check_rank(e)?;
        if d == 0 {
            return Err(Error::DimensionMismatch("slot dimension must be positive".into()));
        }
        let size = checked_size(e, d, cap)?;
        Ok(TensorVector {
            e,
            d,
            data: vec![Rational::zero(); size],
        })
    }

    /// `v_1 (x) ... (x) v_e`.
    pub fn pure(factors: &[Vec<Rational>]) -> Result<Self> {
        let d = factors.first().map_or(0, Vec::len);
        if factors.iter().any(|f| f.len() != d) {
            return Err(Error::DimensionMismatch("factors of different dimension".into()));
        }
        let mut out = TensorVector::zero(factors.len(), d)?;
        for (idx, slot) in out.data.iter_mut().enumerate() {
            let digits = digits(idx, factors.len(), d);
            *slot = digits
                .iter()
                .zip(factors)
                .fold(Rational::one(), |acc, (&j, f)| acc * &f[j]);
        }
        Ok(out)
    }

    /// `v (x) ... (x) v` with `e` factors.
    pub fn pure_power(v: &[Rational], e: usize) -> Result<Self> {
        TensorVector::pure(&vec![v.to_vec(); e])
    }

    /// Basis tensor `b_{j_1} (x) ... (x) b_{j_e}` (0-based indices).
    pub fn basis_word(word: &[usize], d: usize) -> Result<Self> {
        let mut out = TensorVector::zero(word.len(), d)?;
        if word.iter().any(|&j| j >= d) {
            return Err(Error::DimensionMismatch(format!("word {word:?} exceeds dimension {d}")));
        }
        out.data[index(word, d)] = Rational::one();
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.e
    }

    pub fn slot_dimension(&self) -> usize {
        self.d
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn add(&self, other: &TensorVector) -> Result<TensorVector> {
        self.check_shape(other)?;
        Ok(TensorVector {
            e: self.e,
            d: self.d,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> TensorVector {
        TensorVector {
            e: self.e,
            d: self.d,
            data: self.data.iter().map(|a| a.clone() * c).collect(),
        }
    }

    fn check_shape(&self, other: &TensorVector) -> Result<()> {
        if self.e != other.e || self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.e, self.d, other.e, other.d
            )));
        }
        Ok(())
    }
}

fn digits(mut idx: usize, e: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; e];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

fn index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &j| acc * d + j)
}

/// Full coordinate contraction `sum_I v[I] vt[I]`.
pub fn pair(v: &TensorVector, vt: &TensorVector) -> Result<Rational> {
    v.check_shape(vt)?;
    Ok(v.data
        .iter()
        .zip(&vt.data)
        .fold(Rational::zero(), |acc, (a, b)| acc + &(a.clone() * b)))
}

/// `out[J] = scale * v[I]` with `I_s = J_{perm(s)}`.
pub fn apply(op: &PlaceOperator, v: &TensorVector) -> Result<TensorVector> {
    if op.rank() != v.e {
        return Err(Error::RankMismatch {
            left: op.rank(),
            right: v.e,
        });
    }
    let mut out = v.clone();
    let mut src = vec![0; v.e];
    for (j, slot) in out.data.iter_mut().enumerate() {
        let dst = digits(j, v.e, v.d);
        for (s, digit) in src.iter_mut().enumerate() {
            *digit = dst[op.perm.image(s + 1) - 1];
        }
        *slot = v.data[index(&src, v.d)].clone() * &op.scale;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical::matrix_coefficient_scalar;
    use crate::weyl::{enumerate_by_length, generator, pi_element, word_element};

    fn word_of(v: &TensorVector) -> Vec<usize> {
        let idx = v.data().iter().position(|c| !c.is_zero()).unwrap();
        digits(idx, v.rank(), v.slot_dimension())
    }

    #[test]
    fn t_and_gamma_on_basis_words() {
        let abc = TensorVector::basis_word(&[0, 1, 2], 3).unwrap();
        assert_eq!(word_of(&apply(&t_operator(1, 3).unwrap(), &abc).unwrap()), vec![1, 0, 2]);
        assert_eq!(word_of(&apply(&t_operator(0, 3).unwrap(), &abc).unwrap()), vec![2, 1, 0]);
        assert_eq!(word_of(&apply(&gamma_operator(3).unwrap(), &abc).unwrap()), vec![2, 0, 1]);
    }

    #[test]
    fn involutions_and_cycle_order() {
        for e in 2..6 {
            for i in 0..e {
                let t = t_operator(i, e).unwrap();
                assert_eq!(t.compose(&t).unwrap(), PlaceOperator::identity(e));
            }
            assert_eq!(gamma_operator(e).unwrap().pow(e as i64).unwrap(), PlaceOperator::identity(e));
        }
        assert!(t_operator(3, 3).is_err());
    }

    #[test]
    fn conjugation_gives_t0() {
        for e in 3..7 {
            let g = gamma_operator(e).unwrap();
            let gi = g.inverse().unwrap();
            let t1 = t_operator(1, e).unwrap();
            let conj = gi.compose(&t1).unwrap().compose(&g).unwrap();
            assert_eq!(conj, t_operator(0, e).unwrap());
            // the other order shifts t_1 to t_2
            assert_eq!(g.compose(&t1).unwrap().compose(&gi).unwrap(), t_operator(2, e).unwrap());
        }
    }

    #[test]
    fn ev_examples() {
        let p = LevelZeroParams::new(3, 1, 2).unwrap();
        assert_eq!(ev(&ExtendedWeylElement::identity(3).unwrap(), &p).unwrap(), PlaceOperator::identity(3));
        let s1 = ev(&generator(3, 1).unwrap(), &p).unwrap();
        assert_eq!(s1, t_operator(1, 3).unwrap());
        let p2 = LevelZeroParams::new(3, 2, 2).unwrap();
        assert_eq!(ev(&generator(3, 1).unwrap(), &p2).unwrap().scale, Rational::new(1, 4).unwrap());
    }

    #[test]
    fn braid_words_agree() {
        for e in 3..5 {
            let p = LevelZeroParams::new(e, 2, 3).unwrap();
            let a = ev_along_word(0, &[0, 1, 0], &p).unwrap();
            let b = ev_along_word(0, &[1, 0, 1], &p).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn reduced_word_independence_and_projection() {
        for e in [3, 4] {
            let p = LevelZeroParams::new(e, 2, 2).unwrap();
            for w0 in enumerate_by_length(e, 5).unwrap().into_iter().flatten() {
                for k in -1..=1 {
                    let w = ExtendedWeylElement::new(k, w0.clone());
                    let reference = ev(&w, &p).unwrap();
                    assert_eq!(reference.perm, w.project_to_finite());
                    for word in w.all_reduced_words() {
                        assert_eq!(ev_along_word(k, &word, &p).unwrap(), reference);
                    }
                }
            }
        }
    }

    #[test]
    fn pi_maps_to_gamma_inverse() {
        let p = LevelZeroParams::new(4, 1, 2).unwrap();
        let op = ev(&pi_element(4).unwrap(), &p).unwrap();
        assert_eq!(op, gamma_operator(4).unwrap().inverse().unwrap());
    }

    #[test]
    fn pairing_and_pure_powers() {
        let one = Rational::one();
        let zero = Rational::zero();
        let v = TensorVector::pure_power(&[one.clone(), zero], 3).unwrap();
        let vt = TensorVector::pure_power(&[one.clone(), one], 3).unwrap();
        assert_eq!(pair(&v, &vt).unwrap(), Rational::one());
        assert_eq!(apply(&t_operator(1, 3).unwrap(), &v).unwrap(), v);
    }

    #[test]
    fn operator_scale_matches_matrix_coefficient() {
        let v0 = vec![Rational::from(2), Rational::from(-1), Rational::new(1, 3).unwrap()];
        let vt0 = vec![Rational::from(1), Rational::from(5), Rational::from(3)];
        for e in [3, 5] {
            let v = TensorVector::pure_power(&v0, e).unwrap();
            let vt = TensorVector::pure_power(&vt0, e).unwrap();
            let base = pair(&v, &vt).unwrap();
            for f in [1, 2] {
                let p = LevelZeroParams::new(e, f, 3).unwrap();
                let minus_inv_q1 = -p.q1().inverse().unwrap();
                let w = word_element(e, &[1, 0, 2, 1]).unwrap();
                let (_, w0) = w.clone().into_parts();
                let op = ev(&w, &p).unwrap();
                let lhs = minus_inv_q1.pow(w.length() as i64).unwrap() * &pair(&apply(&op, &v).unwrap(), &vt).unwrap();
                let rhs = matrix_coefficient_scalar(&w0, 0, &p).unwrap() * &base;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(TensorVector::zero(13, 2), Err(Error::CapExceeded { .. })));
        assert!(TensorVector::zero(12, 2).is_ok());
        let a = TensorVector::zero(3, 2).unwrap();
        let b = TensorVector::zero(3, 3).unwrap();
        assert!(pair(&a, &b).is_err());
    }
}
