//! The extended affine Weyl group `W = Pi^Z x| W0` of type A.
//!
//! `W0` is realized as the group of affine permutations `w: Z -> Z` with
//! `w(i + e) = w(i) + e` and `sum_{i=1..e} (w(i) - i) = 0`, stored in window
//! notation `[w(1), ..., w(e)]`. The generators are `s_1, ..., s_{e-1}`
//! (adjacent transpositions) and `s_0 = Pi s_1 Pi^{-1}`, which swaps `0` and
//! `1`. `Pi` is the shift `j -> j - 1`, so that `Pi s_i Pi^{-1} = s_{i-1}`
//! with indices mod `e`.
//!
//! An element of `W` is kept in the canonical form `Pi^k w0`. As a map of
//! `Z` it sends `j` to `w0(j) - k`.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Environment variable capping the number of elements an enumeration may
/// hold in memory.
pub const MAX_ELEMS_ENV: &str = "HECKE_MAX_ELEMS";
pub const DEFAULT_MAX_ELEMS: usize = 5_000_000;

pub fn check_rank(e: usize) -> Result<()> {
    if e < 2 {
        Err(Error::InvalidRank(e))
    } else {
        Ok(())
    }
}

/// Evaluates the periodic extension of a window at any integer.
fn window_apply(window: &[i64], j: i64) -> i64 {
    let e = window.len() as i64;
    let r = (j - 1).rem_euclid(e);
    let shift = (j - 1 - r) / e;
    window[r as usize] + shift * e
}

fn residue(v: i64, e: usize) -> usize {
    // in 1..=e
    ((v - 1).rem_euclid(e as i64) + 1) as usize
}

/// Coxeter length of an affine permutation given by its window, via
/// `sum_{1 <= i < j <= e} |floor((w(j) - w(i)) / e)|`.
///
/// The sum is invariant under adding a constant to every entry, so the same
/// formula measures `Pi^k w0`.
fn inversion_length(window: &[i64]) -> usize {
    let e = window.len() as i64;
    let mut total = 0u64;
    for i in 0..window.len() {
        for j in (i + 1)..window.len() {
            total += (window[j] - window[i]).div_euclid(e).unsigned_abs();
        }
    }
    total as usize
}

/// Element of `W0`: an affine permutation with zero shift sum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn identity(e: usize) -> Result<Self> {
        check_rank(e)?;
        Ok(AffinePermutation {
            window: (1..=e as i64).collect(),
        })
    }

    /// Validates residues and the zero-sum normalization.
    pub fn from_window(window: Vec<i64>) -> Result<Self> {
        let e = window.len();
        check_rank(e)?;
        let mut seen = vec![false; e];
        for &v in &window {
            let r = residue(v, e) - 1;
            if seen[r] {
                return Err(Error::InvalidWindow(format!(
                    "{window:?}: residues mod {e} repeat"
                )));
            }
            seen[r] = true;
        }
        let shift: i64 = window.iter().zip(1..).map(|(&v, i)| v - i).sum();
        if shift != 0 {
            return Err(Error::InvalidWindow(format!(
                "{window:?}: shift sum {shift} is not zero"
            )));
        }
        Ok(AffinePermutation { window })
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn apply(&self, j: i64) -> i64 {
        window_apply(&self.window, j)
    }

    pub fn length(&self) -> usize {
        inversion_length(&self.window)
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, i)| v == i)
    }
}

impl fmt::Debug for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.window)
    }
}

/// Element `Pi^k w0` of the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedWeylElement {
    k: i64,
    w0: AffinePermutation,
}

impl ExtendedWeylElement {
    pub fn new(k: i64, w0: AffinePermutation) -> Self {
        ExtendedWeylElement { k, w0 }
    }

    pub fn identity(e: usize) -> Result<Self> {
        Ok(ExtendedWeylElement::new(0, AffinePermutation::identity(e)?))
    }

    /// Rebuilds the canonical form from the window of the full map `j -> w(j)`.
    pub fn from_full_window(window: Vec<i64>) -> Result<Self> {
        let e = window.len();
        check_rank(e)?;
        let shift: i64 = window.iter().zip(1..).map(|(&v, i)| v - i).sum();
        if shift % e as i64 != 0 {
            return Err(Error::InvalidWindow(format!(
                "{window:?}: shift sum {shift} not divisible by {e}"
            )));
        }
        let k = -shift / e as i64;
        let w0 = AffinePermutation::from_window(window.into_iter().map(|v| v + k).collect())?;
        Ok(ExtendedWeylElement { k, w0 })
    }

    pub fn rank(&self) -> usize {
        self.w0.rank()
    }

    /// The power of `Pi`.
    pub fn shift(&self) -> i64 {
        self.k
    }

    pub fn finite_part(&self) -> &AffinePermutation {
        &self.w0
    }

    pub fn into_parts(self) -> (i64, AffinePermutation) {
        (self.k, self.w0)
    }

    pub fn full_window(&self) -> Vec<i64> {
        self.w0.window.iter().map(|v| v - self.k).collect()
    }

    pub fn apply(&self, j: i64) -> i64 {
        self.w0.apply(j) - self.k
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.w0.is_identity()
    }

    /// `l(Pi^k w0) = l(w0)`.
    pub fn length(&self) -> usize {
        self.w0.length()
    }

    pub fn try_multiply(&self, other: &ExtendedWeylElement) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        let window = (1..=self.rank() as i64)
            .map(|j| self.apply(other.apply(j)))
            .collect();
        ExtendedWeylElement::from_full_window(window)
    }

    pub fn inverse(&self) -> Self {
        let e = self.rank();
        let full = self.full_window();
        let mut inv = vec![0i64; e];
        for (idx, &v) in full.iter().enumerate() {
            let r = residue(v, e);
            // w(i) = v  =>  w^{-1}(r) = i - (v - r)
            inv[r - 1] = (idx as i64 + 1) - (v - r as i64);
        }
        ExtendedWeylElement::from_full_window(inv).expect("inverse of a valid element")
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = ExtendedWeylElement::identity(self.rank()).expect("valid rank");
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// `s_i * self`, computed by swapping the value residues `i` and `i + 1`.
    pub fn left_mul_generator(&self, i: usize) -> Result<Self> {
        let e = self.rank();
        if i >= e {
            return Err(Error::IndexOutOfRange { index: i, rank: e });
        }
        // residues in 1..=e of the swapped values i and i + 1
        let lo = if i == 0 { e } else { i };
        let hi = i + 1;
        let window = self
            .w0
            .window
            .iter()
            .map(|&v| {
                let r = residue(v - self.k, e);
                if r == lo {
                    v + 1
                } else if r == hi {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        Ok(ExtendedWeylElement {
            k: self.k,
            w0: AffinePermutation { window },
        })
    }

    /// True iff `l(s_i * self) = l(self) + 1`.
    pub fn is_length_increasing(&self, i: usize) -> Result<bool> {
        Ok(self.left_mul_generator(i)?.length() > self.length())
    }

    /// Generators `s_i` with `l(s_i w) < l(w)`, in increasing order.
    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| !self.is_length_increasing(i).expect("index in range"))
            .collect()
    }

    /// A reduced word `[i_1, ..., i_l]` with `w0 = s_{i_1} ... s_{i_l}`,
    /// obtained by peeling the smallest left descent. The `Pi` power is not
    /// part of the word; read it from [`shift`](Self::shift).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut cur = ExtendedWeylElement::new(0, self.w0.clone());
        while let Some(&i) = cur.left_descents().first() {
            word.push(i);
            cur = cur.left_mul_generator(i).expect("index in range");
        }
        word
    }

    /// Every reduced word of the finite part, in lexicographic order.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        fn walk(w: &ExtendedWeylElement, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let descents = w.left_descents();
            if descents.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for i in descents {
                prefix.push(i);
                walk(&w.left_mul_generator(i).expect("index in range"), prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        walk(&ExtendedWeylElement::new(0, self.w0.clone()), &mut Vec::new(), &mut out);
        out
    }

    /// `Pi^m * self * Pi^{-m}`.
    pub fn conjugate_by_pi(&self, m: i64) -> Self {
        let pi = pi_element(self.rank()).expect("valid rank");
        &(&pi.pow(m) * self) * &pi.pow(-m)
    }

    /// Image in the symmetric group `S_e` under `w -> (j -> w(j) mod e)`.
    pub fn project_to_finite(&self) -> Permutation {
        let e = self.rank();
        Permutation {
            images: (1..=e as i64).map(|j| residue(self.apply(j), e) - 1).collect(),
        }
    }
}

impl std::ops::Mul for &ExtendedWeylElement {
    type Output = ExtendedWeylElement;

    /// Panics on rank mismatch; see [`ExtendedWeylElement::try_multiply`].
    fn mul(self, rhs: &ExtendedWeylElement) -> ExtendedWeylElement {
        self.try_multiply(rhs).expect("rank mismatch in group product")
    }
}

impl fmt::Debug for ExtendedWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pi^{} {:?}", self.k, self.w0)
    }
}

impl fmt::Display for ExtendedWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for ExtendedWeylElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ExtendedWeylElement", 2)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("window", &self.w0.window)?;
        st.end()
    }
}

/// Generator `s_i`, `0 <= i < e`.
pub fn generator(e: usize, i: usize) -> Result<ExtendedWeylElement> {
    check_rank(e)?;
    ExtendedWeylElement::identity(e)?.left_mul_generator(i)
}

/// The element `Pi`: shift power 1, trivial finite part.
pub fn pi_element(e: usize) -> Result<ExtendedWeylElement> {
    Ok(ExtendedWeylElement::new(1, AffinePermutation::identity(e)?))
}

/// Multiplies a word of generators left to right.
pub fn word_element(e: usize, word: &[usize]) -> Result<ExtendedWeylElement> {
    let mut acc = ExtendedWeylElement::identity(e)?;
    for &i in word.iter().rev() {
        acc = acc.left_mul_generator(i)?;
    }
    Ok(acc)
}

pub fn max_elements_from_env() -> usize {
    std::env::var(MAX_ELEMS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ELEMS)
}

/// Breadth-first enumeration of `W0` in the Cayley graph on
/// `{s_0, ..., s_{e-1}}`, grouped by distance from the identity.
///
/// Layers are sorted so the output does not depend on hashing order. The
/// element count is capped by `HECKE_MAX_ELEMS`.
pub fn enumerate_by_length(e: usize, max_len: usize) -> Result<Vec<Vec<AffinePermutation>>> {
    enumerate_by_length_capped(e, max_len, max_elements_from_env())
}

pub fn enumerate_by_length_capped(
    e: usize,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Vec<AffinePermutation>>> {
    check_rank(e)?;
    let id = AffinePermutation::identity(e)?;
    let mut seen: HashSet<AffinePermutation> = HashSet::new();
    seen.insert(id.clone());
    let mut layers = vec![vec![id]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in layers.last().expect("non-empty") {
            let elt = ExtendedWeylElement::new(0, w.clone());
            for i in 0..e {
                let (_, v) = elt.left_mul_generator(i)?.into_parts();
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        if seen.len() > cap {
            return Err(Error::CapExceeded { limit: cap });
        }
        next.sort();
        layers.push(next);
    }
    Ok(layers)
}

/// Product of `word_len` uniformly chosen generators, optionally times a
/// random power of `Pi` in `-pi_range..=pi_range`.
pub fn random_element<R: Rng + ?Sized>(
    e: usize,
    word_len: usize,
    pi_range: i64,
    rng: &mut R,
) -> Result<ExtendedWeylElement> {
    let word: Vec<usize> = (0..word_len).map(|_| rng.random_range(0..e)).collect();
    let w = word_element(e, &word)?;
    let k = if pi_range > 0 { rng.random_range(-pi_range..=pi_range) } else { 0 };
    Ok(&pi_element(e)?.pow(k) * &w)
}

/// Permutation of `{1, ..., e}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 1-based images `[sigma(1), ..., sigma(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|v| v - 1).collect(),
        })
    }

    /// Transposition of the 1-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of the 1-based point `j`.
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    /// `(self o other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, n: i64) -> Permutation {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Permutation::identity(self.degree()), |acc, _| acc.compose(&base))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: usize, i: usize) -> ExtendedWeylElement {
        generator(e, i).unwrap()
    }

    #[test]
    fn generator_windows() {
        assert_eq!(s(3, 1).finite_part().window(), &[2, 1, 3]);
        assert_eq!(s(3, 1).shift(), 0);
        assert_eq!(s(3, 0).finite_part().window(), &[0, 2, 4]);
        assert_eq!(s(2, 0).finite_part().window(), &[0, 3]);
        assert_eq!(s(4, 3).finite_part().window(), &[1, 2, 4, 3]);
        for e in 2..6 {
            for i in 0..e {
                assert!((&s(e, i) * &s(e, i)).is_identity());
                assert_eq!(s(e, i).length(), 1);
            }
        }
    }

    #[test]
    fn s0_is_pi_conjugate_of_s1() {
        for e in 2..6 {
            let pi = pi_element(e).unwrap();
            let conj = &(&pi * &s(e, 1)) * &pi.inverse();
            assert_eq!(conj, s(e, 0));
            assert_eq!(conj.length(), 1);
        }
    }

    #[test]
    fn pi_conjugation_lowers_index() {
        let pi = pi_element(3).unwrap();
        assert_eq!(s(3, 1).conjugate_by_pi(1), s(3, 0));
        assert_eq!(s(3, 2).conjugate_by_pi(1), s(3, 1));
        assert_eq!(s(3, 0).conjugate_by_pi(1), s(3, 2));
        assert!((&pi * &pi.inverse()).is_identity());
        assert!((&pi_element(2).unwrap() * &pi_element(2).unwrap().inverse()).is_identity());
    }

    #[test]
    fn pi_power_e_is_central() {
        for e in 2..=4 {
            let z = pi_element(e).unwrap().pow(e as i64);
            for i in 0..e {
                assert_eq!(&z * &s(e, i), &s(e, i) * &z);
            }
        }
    }

    #[test]
    fn braid_relations() {
        let e = 3;
        let st = &s(e, 1) * &s(e, 2);
        assert!(st.pow(3).is_identity());
        assert_eq!((&(&s(e, 1) * &s(e, 2)) * &s(e, 1)).length(), 3);
    }

    #[test]
    fn rank_checks() {
        assert!(matches!(generator(3, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(generator(1, 0), Err(Error::InvalidRank(1))));
        assert!(matches!(
            s(3, 1).try_multiply(&s(4, 1)),
            Err(Error::RankMismatch { left: 3, right: 4 })
        ));
        assert!(AffinePermutation::from_window(vec![1, 1, 4]).is_err());
        assert!(AffinePermutation::from_window(vec![4, 2, 3]).is_err());
    }

    #[test]
    fn inverse_of_pi_s1() {
        let a = &pi_element(3).unwrap() * &s(3, 1);
        let inv = a.inverse();
        assert!((&a * &inv).is_identity());
        assert!((&inv * &a).is_identity());
        assert_eq!(inv, &s(3, 1) * &pi_element(3).unwrap().inverse());
    }

    #[test]
    fn reduced_words_small() {
        assert!(ExtendedWeylElement::identity(3).unwrap().reduced_word().is_empty());
        assert_eq!(s(3, 2).reduced_word(), vec![2]);
        let w = word_element(3, &[1, 2, 1]).unwrap();
        assert_eq!(w.length(), 3);
        assert_eq!(w.all_reduced_words(), vec![vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn length_increasing_examples() {
        let id = ExtendedWeylElement::identity(3).unwrap();
        assert!(id.is_length_increasing(1).unwrap());
        assert!(!s(3, 1).is_length_increasing(1).unwrap());
    }

    #[test]
    fn layer_sizes() {
        let sizes = |e, l| -> Vec<usize> {
            enumerate_by_length(e, l).unwrap().iter().map(Vec::len).collect()
        };
        assert_eq!(sizes(2, 3), vec![1, 2, 2, 2]);
        assert_eq!(sizes(3, 3), vec![1, 3, 6, 9]);
        assert!(enumerate_by_length(4, 0).unwrap()[0][0].is_identity());
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_by_length_capped(3, 10, 20),
            Err(Error::CapExceeded { limit: 20 })
        ));
    }

    #[test]
    fn projection_examples() {
        assert_eq!(s(3, 1).project_to_finite().images(), vec![2, 1, 3]);
        assert_eq!(s(4, 0).project_to_finite().images(), vec![4, 2, 3, 1]);
        let pi = pi_element(4).unwrap();
        assert_eq!(pi.project_to_finite().images(), vec![4, 1, 2, 3]);
        assert!(pi.pow(4).project_to_finite().is_identity());
        let a = word_element(3, &[0, 1, 0]).unwrap().project_to_finite();
        let b = word_element(3, &[1, 0, 1]).unwrap().project_to_finite();
        assert_eq!(a, b);
    }

    #[test]
    fn serializes_window() {
        let j = serde_json::to_string(&(&pi_element(3).unwrap() * &s(3, 1))).unwrap();
        assert_eq!(j, r#"{"k":1,"window":[2,1,3]}"#);
    }
}
