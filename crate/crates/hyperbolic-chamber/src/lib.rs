//! Fundamental chambers of hyperbolic reflection groups, built exactly.
//!
//! The crate constructs the Weyl chamber of the norm-(−2) reflection group
//! of an even lattice of signature (1, n−1) from a controlling vector,
//! reduces vectors into it, enumerates its vectors by norm, and computes
//! the Weyl vector and the minimal isotropic pairing invariant. All
//! arithmetic is exact (arbitrary-precision integers and rationals).

pub mod chamber;
pub mod enumerate;
pub mod error;
pub mod jsonio;
pub mod reduce;
pub mod solver;
pub mod vinberg;
pub mod weyl;

pub use chamber::CoxeterChamber;
pub use enumerate::enumerate_chamber_vectors;
pub use error::{ChamberError, ChamberResult};
pub use reduce::{reduce_to_chamber, stabilizer_subset, ChamberVector};
pub use solver::vectors_with_norm_and_pairing;
pub use vinberg::vinberg_simple_roots;
pub use weyl::{phi_invariant, weyl_vector};
