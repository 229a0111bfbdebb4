//! The hyperbolic (signature (1, n−1)) base case of the orthogonal-group
//! and equivalence solvers, built on the reflective polytope.
//!
//! For a reflective lattice, O⁺(L) = W ⋊ Stab(P): every future-preserving
//! isometry moves the fundamental polytope P to some chamber and can be
//! corrected back by W, leaving a wall-permuting symmetry. Together with
//! −1 (which swaps the cones and is central) this gives the full O(L).
//! Primitive isotropic vectors, up to O(L), are classified by the cusp
//! rays of P up to Stab(P): reduction into P lands every isotropic vector
//! on an extreme ray (strict convexity of the light cone), and chambers
//! containing a given ray form one orbit under the reflections fixing it.

use exact_core::{IMat, IVec, Lattice};
use num_traits::Zero;

use crate::error::GroupResult;
use crate::polysym::{polytope_maps, polytope_symmetries};
use crate::reflective::{reflective_polytope, ReflectiveBudget, ReflectivePolytope};

/// Polytope plus its full symmetry group: everything the base case needs.
#[derive(Clone, Debug)]
pub struct HyperbolicData {
    pub polytope: ReflectivePolytope,
    /// All wall-permuting isometries, identity included.
    pub symmetries: Vec<IMat>,
}

/// Build the polytope and its symmetries for a hyperbolic lattice.
pub fn hyperbolic_data(l: &Lattice, budget: ReflectiveBudget) -> GroupResult<HyperbolicData> {
    let polytope = reflective_polytope(l, None, budget)?;
    let symmetries = polytope_symmetries(&polytope)?;
    Ok(HyperbolicData {
        polytope,
        symmetries,
    })
}

impl HyperbolicData {
    /// Generators of the full orthogonal group: a reflection per wall, the
    /// nontrivial polytope symmetries, and −1.
    pub fn orth_gens(&self) -> Vec<IMat> {
        let n = self.polytope.rank();
        let mut gens: Vec<IMat> = (0..self.polytope.walls.len())
            .map(|i| self.polytope.reflection(i))
            .collect();
        gens.extend(
            self.symmetries
                .iter()
                .filter(|s| !s.is_identity())
                .cloned(),
        );
        gens.push(IMat::identity(n).neg());
        gens
    }

    /// Orbit representatives of primitive isotropic vectors under O(L):
    /// cusp rays of the polytope up to the symmetry group, lexicographically
    /// least in each orbit, sorted.
    pub fn isotropic_reps(&self) -> Vec<IVec> {
        let cusps = self.polytope.cusps();
        let mut reps: Vec<IVec> = Vec::new();
        for c in &cusps {
            let rep = self
                .symmetries
                .iter()
                .map(|s| exact_core::mat::row_mul(c, s))
                .min()
                .expect("symmetry list contains the identity");
            debug_assert!(self.polytope.lattice.norm(&rep).is_zero());
            if !reps.contains(&rep) {
                reps.push(rep);
            }
        }
        reps.sort();
        reps
    }
}

/// Decide whether two hyperbolic lattices are isometric; returns a
/// row-action matrix P with P·G2·Pᵀ = G1 mapping lattice-1 coordinates to
/// lattice-2 coordinates, or None (a verified absence when both lattices
/// are reflective).
pub fn hyperbolic_equiv(
    l1: &Lattice,
    l2: &Lattice,
    budget: ReflectiveBudget,
) -> GroupResult<Option<IMat>> {
    if l1.rank() != l2.rank() || l1.det() != l2.det() {
        return Ok(None);
    }
    let p1 = reflective_polytope(l1, None, budget)?;
    let p2 = reflective_polytope(l2, None, budget)?;
    let maps = polytope_maps(&p1, &p2, true)?;
    Ok(maps.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::lattice::{e8, hyperbolic_plane};

    #[test]
    fn e10_orth_is_coxeter_only() {
        let l = hyperbolic_plane(1).direct_sum(&e8().rescale(-1));
        let h = hyperbolic_data(&l, ReflectiveBudget::default()).unwrap();
        // 10 reflections + (−1); no extra symmetries.
        assert_eq!(h.orth_gens().len(), 11);
        assert_eq!(h.isotropic_reps().len(), 1);
        for g in h.orth_gens() {
            assert_eq!(g.mul(&l.gram).mul(&g.transpose()), l.gram);
        }
    }

    #[test]
    fn u_e8m2_has_two_isotropic_orbits() {
        let l = hyperbolic_plane(1).direct_sum(&e8().rescale(-2));
        let h = hyperbolic_data(&l, ReflectiveBudget::default()).unwrap();
        let reps = h.isotropic_reps();
        assert_eq!(reps.len(), 2);
        // The two orbits are separated by divisibility (1 vs 2).
        let mut divs: Vec<_> = reps
            .iter()
            .map(|r| crate::reflective::divisibility(&l, r))
            .collect();
        divs.sort();
        assert_eq!(divs, vec![1.into(), 2.into()]);
    }

    #[test]
    fn equiv_of_scrambled_copy() {
        let l = hyperbolic_plane(2).direct_sum(&e8().rescale(-2));
        // A deterministic unimodular scramble.
        let mut p = IMat::identity(10);
        p.add_row_multiple(0, 3, &2.into());
        p.add_row_multiple(7, 1, &(-1).into());
        p.add_row_multiple(4, 9, &3.into());
        let g2 = p.mul(&l.gram).mul(&p.transpose());
        let l2 = Lattice::new("scrambled", g2).unwrap();
        let w = hyperbolic_equiv(&l, &l2, ReflectiveBudget::default())
            .unwrap()
            .expect("isometric by construction");
        assert_eq!(w.mul(&l2.gram).mul(&w.transpose()), l.gram);
    }

    #[test]
    fn non_equivalent_dets() {
        let l1 = hyperbolic_plane(1).direct_sum(&e8().rescale(-2));
        let l2 = hyperbolic_plane(2).direct_sum(&e8().rescale(-2));
        assert!(hyperbolic_equiv(&l1, &l2, ReflectiveBudget::default())
            .unwrap()
            .is_none());
    }
}
