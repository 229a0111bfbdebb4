//! Isometry groups of indefinite integral lattices, computed exactly.
//!
//! The crate provides: orbits of lattices under rational matrix groups
//! with Schreier stabilizers and transversals (the integral stabilizer /
//! transporter / coset algorithms); approximate models of orthogonal
//! groups via Eichler transvections with an exact orbit oracle; general
//! reflective chambers of hyperbolic lattices (all reflective root norms,
//! polyhedral termination); the inductive solvers for automorphism groups
//! and equivalence of indefinite lattices; orbit representatives of
//! vectors of given norm; and stabilizers, equivalence and enumeration of
//! totally isotropic subspaces and flags.

pub mod eichler;
pub mod error;
pub mod group;
pub mod hyperbolic;
pub mod integral;
pub mod isotropic;
pub mod latorbit;
pub mod model;
pub mod orth;
pub mod polysym;
pub mod rays;
pub mod reflective;

pub use error::{GroupError, GroupResult};
pub use group::IsoGroup;
pub use integral::{integral_cosets, integral_stabilizer, integral_transporter};
pub use latorbit::{lattice_key, lattice_orbit, LatKey, OrbitOutcome, OrbitSpec};
