//! Numeric positivity: LDL pivots and eigenvalues of symmetric matrices, and
//! seeded random search for matrix points where a polynomial is not PSD.
//!
//! Sampling can refute positivity but never certify it globally.

mod ldl;
mod rng;
mod sample;

pub use ldl::{ldl_pivots, max_abs, min_eigenvalue, LdlResult};
pub use rng::SplitMix64;
pub use sample::{
    sample_matrix_positive, subharmonic_at_point, PointVerdict, SampleConfig, SampleOutcome,
    SampleStats, SampleVerdict, Witness,
};
