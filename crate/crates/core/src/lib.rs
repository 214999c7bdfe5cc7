//! Exact computer algebra for harmonic and subharmonic polynomials in free
//! noncommuting symmetric variables.
//!
//! The crate is organised bottom-up:
//!
//! * [`ncpoly`] words, rational polynomials, parsing and matrix evaluation;
//! * [`calculus`] directional derivatives, the Laplacian and the commutative
//!   collapse;
//! * [`harmonicspace`] harmonic bases via exact nullspaces, and the powers of
//!   `x1 + i x2`;
//! * [`middlematrix`] border-vector / middle-matrix representations of
//!   polynomials quadratic in `h`;
//! * [`positivity`] numeric PSD tests and seeded counterexample search;
//! * [`classify2`] the two-variable classification, Gram forms and sums of
//!   squares of harmonics.

pub mod calculus;
pub mod classify2;
mod error;
pub mod exact;
pub mod harmonicspace;
pub mod json;
pub mod middlematrix;
pub mod ncpoly;
pub mod positivity;

pub use calculus::{
    commutative_collapse, commutative_laplacian, directional_derivative, laplacian, CommPoly,
};

pub use error::{Error, Result};
pub use classify2::{classify, Verdict, VerdictKind};
pub use harmonicspace::{gamma_power_parts, harmonic_basis, HarmonicBasis};
pub use middlematrix::MiddleMatrixRep;
pub use ncpoly::{evaluate, parse, Letter, MatrixPoint, Poly, Scalar, Word};
pub use positivity::{SampleConfig, SampleVerdict, Witness};
