//! Deterministic computational group theory for permutation groups.
//!
//! Provides stabilizer chains (Schreier–Sims), orbit partitions, coset
//! spaces with canonical representatives, backtrack searches for set
//! stabilizers and set transporters (with an optional XOR-linearity
//! refinement for groups acting linearly on a boolean cube), subgroup
//! fingerprints, and an exact subgroup-conjugacy test.
//!
//! Everything is deterministic: the same inputs produce the same chains,
//! representatives, and witnesses on every run.

mod chain;
mod conjugacy;
mod coset;
mod error;
mod fingerprint;
mod jsonio;
mod orbit;
mod perm;
mod search;

pub use chain::{PermGroup, StabChain};
pub use conjugacy::{subgroup_conjugate, MarkedFamily};
pub use coset::{canonical_rep, CosetSpace};
pub use error::{PermError, PermResult};
pub use fingerprint::{
    fingerprint, FingerprintOptions, SubgroupFingerprint, ELEMENT_ENUM_LIMIT, SURVEY_ORDER_LIMIT,
};
pub use jsonio::{
    group_from_str, group_from_value, group_to_string, group_to_value, perm_from_value,
    perm_to_value,
};
pub use orbit::{
    orbit_partition, orbit_partition_by, orbit_partition_on, orbit_with_transporters,
    point_transporter, OrbitPartition,
};
pub use perm::{is_xor_linear, translation_axis, Perm};
pub use search::{set_stabilizer, set_transporter, SearchOptions};
