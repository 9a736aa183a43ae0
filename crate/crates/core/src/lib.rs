//! Certification of total negativity and total non-positivity of order `k`
//! for matrices, interval hulls and LCP instances.
//!
//! A matrix is totally negative (TN) of order `k` when every minor of size at
//! most `k` is negative, and totally non-positive (TNP) when every such minor
//! is at most zero. Besides the minor definitions, the crate decides both
//! classes by sign non-reversal, variation diminution and linear
//! complementarity, and cross-checks them against each other.
//!
//! All algorithms are generic over [`Scalar`]; [`Rational`] gives exact
//! answers, `f64` and `f32` are accepted for quick screening.

pub mod criteria;
mod error;
pub mod genlab;
pub mod hull;
pub mod lcp;
mod matrix;
pub mod minors;
pub mod random;
mod scalar;
pub mod signs;
pub mod text;

pub use error::{Error, Result};
pub use matrix::{IndexSet, Matrix};
pub use scalar::{Scalar, Sign};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
pub type ExactMatrix = Matrix<Rational>;
pub type FloatMatrix = Matrix<f64>;
