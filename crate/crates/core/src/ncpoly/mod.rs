//! Polynomials in the free algebra on `g` symmetric variables plus the
//! direction letter `h`.
//!
//! Coefficients are exact rationals. Words are ordered graded
//! lexicographically with `x1 < x2 < ... < xg < h`, and a [`Poly`] keeps its
//! terms in that order so every rendering and serialization is canonical.

mod eval;
mod parse;
mod poly;
mod scalar;
mod word;

pub use eval::{evaluate, MatrixPoint};
pub use parse::parse;
pub use poly::{DegreeProfile, Poly};
pub use scalar::{format_scalar, parse_scalar, Scalar};
#[cfg(test)]
pub(crate) use scalar::{int as scalar_from_i64, ratio as scalar_ratio};
pub use word::{Letter, Word};
