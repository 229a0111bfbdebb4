//! Enumeration and symmetry of definite integral quadratic forms: exact
//! fixed-norm vector enumeration (Fincke–Pohst), automorphism groups with
//! exact orders, and the equivalence problem with verified witnesses.

mod aut;
mod enumerate;
mod error;
mod form;

pub use aut::{definite_aut, definite_equiv, AutGroup};
pub use enumerate::{enumerate_fixed_norm, enumerate_shifted, enumerate_up_to_norm, norms_of};
pub use error::{EnumError, EnumResult};
pub use form::DefiniteForm;
