//! Shared inputs for the benchmarks in `benches/`.

use hecke_core::weyl::word_element;
use hecke_core::{HeckeAlgebra, HeckeElement, LaurentPoly, Rational, Scalar};

/// `sum_j (j + 1) [w_j]` over prefixes `w_j` of a fixed word, rank `e`.
pub fn prefix_sum(e: usize, len: usize) -> HeckeElement<LaurentPoly> {
    let word: Vec<usize> = (0..len).map(|j| (j * 2 + 1) % e).collect();
    let mut h = HeckeElement::zero(e);
    for j in 0..=len {
        let w = word_element(e, &word[..j]).expect("valid word");
        h.add_term(w, LaurentPoly::constant(Rational::from(j as i64 + 1)));
    }
    h
}

pub fn generic_algebra(e: usize) -> HeckeAlgebra<LaurentPoly> {
    HeckeAlgebra::generic(e).expect("valid rank")
}

/// `-1 / 2`, the distinction point for `q0 = 2`, `f = 1`.
pub fn minus_half() -> Rational {
    -Rational::from(2).inverse().expect("nonzero")
}
