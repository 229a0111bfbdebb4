//! The three workhorse algorithms on rational matrix groups with an
//! invariant lattice: integral stabilizer of a second lattice, integral
//! transporter, and cosets of the integral subgroup.
//!
//! All three are instances of one finite orbit walk on canonical lattice
//! keys: the orbit of Lp (resp. Z^n) under right multiplication is finite
//! because every orbit lattice is sandwiched between two fixed lattices
//! commensurable with the invariant one, and stabilizers/transversals fall
//! out of the Schreier machinery.

use exact_core::mat::{det_field, inverse_field};
use exact_core::QMat;
use num_traits::{One, Signed, Zero};

use crate::error::{GroupError, GroupResult};
use crate::group::{as_unimodular, IsoGroup};
use crate::latorbit::{lattice_orbit, OrbitSpec};

/// Stabilizer plus coset data from one orbit walk.
pub struct StabCosets {
    /// The stabilizer subgroup, preserving `lp` (verified).
    pub group: IsoGroup,
    /// Right-coset transversal of the stabilizer in the ambient group:
    /// element i moves `lp` to the i-th orbit lattice.
    pub transversal: Vec<QMat>,
    pub orbit_len: usize,
}

/// Generators of the subgroup of `g` preserving the lattice spanned by the
/// rows of `lp` (Alg 1). The orbit walk is capped at `cap` nodes.
pub fn integral_stabilizer(g: &IsoGroup, lp: &QMat, cap: usize) -> GroupResult<IsoGroup> {
    Ok(stabilizer_and_cosets(g, lp, false, cap)?.group)
}

/// As `integral_stabilizer`, but also return the coset transversal of the
/// stabilizer in `g` (used by approximate-model transfers, Alg 1 + Alg 3
/// in one walk).
pub fn stabilizer_and_cosets(
    g: &IsoGroup,
    lp: &QMat,
    want_transversal: bool,
    cap: usize,
) -> GroupResult<StabCosets> {
    let out = lattice_orbit(&OrbitSpec {
        action: g.gens(),
        source: None,
        start: lp.clone(),
        target: None,
        want_stabilizer: true,
        want_transversal,
        node_cap: cap,
    })?;
    let group = IsoGroup::new(g.gram().clone(), lp.clone(), out.stabilizer)?;
    Ok(StabCosets {
        group,
        transversal: out.transversal,
        orbit_len: out.orbit_len,
    })
}

/// Find g in the group with g·x integral and unimodular, or prove there is
/// none (Alg 2). `x` must be invertible; a determinant of absolute value
/// ≠ 1 is an immediate obstruction.
pub fn integral_transporter(g: &IsoGroup, x: &QMat, cap: usize) -> GroupResult<Option<QMat>> {
    let n = g.ambient_dim();
    if x.rows() != n || x.cols() != n {
        return Err(GroupError::Domain(format!(
            "transporter target is {}x{}, ambient dimension is {n}",
            x.rows(),
            x.cols()
        )));
    }
    let d = det_field(x);
    if d.is_zero() {
        return Err(GroupError::Domain("transporter target is singular".into()));
    }
    if d.abs() != num_rational::BigRational::one() {
        return Ok(None);
    }
    // g·x ∈ GL_n(Z)  ⟺  Z^n·g·x = Z^n  ⟺  Z^n·g = Z^n·x⁻¹.
    let target = inverse_field(x)?;
    let out = lattice_orbit(&OrbitSpec {
        action: g.gens(),
        source: None,
        start: QMat::identity(n),
        target: Some(&target),
        want_stabilizer: false,
        want_transversal: false,
        node_cap: cap,
    })?;
    match out.transporter {
        Some(t) => {
            let witness = t.mul(x);
            if as_unimodular(&witness).is_none() {
                return Err(GroupError::NotPreserving(
                    "transporter verification failed: g·x is not integral unimodular".into(),
                ));
            }
            Ok(Some(t))
        }
        None => Ok(None),
    }
}

/// Right-coset representatives of G ∩ GL_n(Z) in G (Alg 3): the identity
/// first, pairwise in distinct cosets, complete.
pub fn integral_cosets(g: &IsoGroup, cap: usize) -> GroupResult<Vec<QMat>> {
    let n = g.ambient_dim();
    let out = lattice_orbit(&OrbitSpec {
        action: g.gens(),
        source: None,
        start: QMat::identity(n),
        target: None,
        want_stabilizer: false,
        want_transversal: true,
        node_cap: cap,
    })?;
    Ok(out.transversal)
}
