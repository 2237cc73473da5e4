//! Exact computations in the affine Hecke algebra of type A and its
//! spherical function, with the finite checks that go with them.

pub mod distinction;
pub mod error;
pub mod gelfand;
pub mod hecke;
pub mod scalar;
pub mod spherical;
pub mod tensor;
pub mod weyl;

pub use distinction::{GrowthSeries, IntegralReport, RationalFunction};
pub use error::{Error, Result};
pub use gelfand::{FiniteRep, GelfandReport, RationalMatrix};
pub use hecke::{CharacterData, HeckeAlgebra, HeckeElement, PresentationReport};
pub use scalar::{LaurentPoly, Rational, Scalar};
pub use spherical::{EigenReport, LevelZeroParams, SphericalParams, Truncation};
pub use tensor::{PlaceOperator, TensorVector};
pub use weyl::{AffinePermutation, ExtendedWeylElement, Permutation};
