//! Classification of homogeneous harmonic and subharmonic polynomials in two
//! variables, neighbor decompositions, Gram forms and sums of squares of
//! harmonics, and the odd-degree sandwich form.
//!
//! Degrees 2 and 4 and even degrees from 6 on each have a closed-form
//! description; odd degrees are harmonic or not subharmonic at all.

mod degree4;
mod gram;
mod neighbor;
mod sandwich;
mod verdict;

pub use degree4::{
    degree4_inequalities, family_generators, general_degree4, general_degree4_generators,
    Degree4Coeffs, InequalityRecord, Region,
};
pub use gram::{
    congruence, gram_from_neighbors, laplacian_sos_identity_check, sos_certificate, sos_decompose,
    ExpandedBasis, GramForm, SosCertificate, SosDecomposition, SosTerm,
};
pub use neighbor::{
    left_neighbor, neighbor_harmonicity_check, right_neighbor, NeighborDecomposition, Side,
};
pub use sandwich::{odd_sandwich, SandwichTensor};
pub use verdict::{
    classify, high_even_generators, high_even_membership, verify_certificate, Certificate,
    Membership, Verdict, VerdictKind,
};
