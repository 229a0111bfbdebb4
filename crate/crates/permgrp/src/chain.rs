//! Deterministic Schreier–Sims stabilizer chains and the `PermGroup` type.
//!
//! A chain is a sequence of levels; level `l` holds generators of the
//! pointwise stabilizer of the first `l` base points, the fundamental orbit
//! of its base point, and explicit transversal permutations. The group
//! order is the product of the fundamental orbit lengths, and membership is
//! decided by sifting.

use crate::error::{PermError, PermResult};
use crate::perm::Perm;
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Debug)]
pub struct Level {
    /// Base point of this level.
    pub point: u32,
    /// Generators of the group at this level (they fix all earlier base
    /// points).
    pub gens: Vec<Perm>,
    /// Fundamental orbit in discovery order; `orbit[0] == point`.
    orbit: Vec<u32>,
    /// `pos[p]` is `1 + index of p in orbit`, or 0 when `p` is outside.
    pos: Vec<u32>,
    /// `trans[j]` maps `point` to `orbit[j]`.
    trans: Vec<Perm>,
    /// Inverses of `trans`.
    trans_inv: Vec<Perm>,
    /// Per-generator count of orbit positions already expanded (Schreier
    /// closure progress).
    scanned: Vec<usize>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut pos = vec![0u32; degree];
        pos[point as usize] = 1;
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            pos,
            trans: vec![Perm::identity(degree)],
            trans_inv: vec![Perm::identity(degree)],
            scanned: Vec::new(),
        }
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    pub fn in_orbit(&self, p: u32) -> bool {
        self.pos[p as usize] != 0
    }

    /// Transversal element mapping the base point to `p` (which must be in
    /// the orbit).
    pub fn transversal_to(&self, p: u32) -> &Perm {
        &self.trans[self.pos[p as usize] as usize - 1]
    }

    pub fn transversal_from(&self, p: u32) -> &Perm {
        &self.trans_inv[self.pos[p as usize] as usize - 1]
    }

    pub fn transversal_at(&self, j: usize) -> &Perm {
        &self.trans[j]
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> Self {
        StabChain { degree, levels: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> BigInt {
        let mut o = BigInt::one();
        for l in &self.levels {
            o *= BigInt::from(l.orbit.len());
        }
        o
    }

    /// Sift a permutation through levels `start..`; returns the residue and
    /// the first level it could not be stripped at (`levels.len()` when it
    /// sifts to the bottom).
    pub fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (li, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.point);
            if !level.in_orbit(beta) {
                return (g, li);
            }
            g = g.then(level.transversal_from(beta));
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (residue, _) = self.sift_from(g.clone(), 0);
        residue.is_identity()
    }

    /// Insert a permutation known to fix the base points of all levels
    /// before `entry`, re-establishing the Schreier closure invariant.
    ///
    /// The sifted residue is appended to the generator lists of *every*
    /// level from `entry` down to the level where sifting stopped (it fixes
    /// all those levels' base points on the way down). This keeps the
    /// per-level generator sets nested, so each level's generators generate
    /// the full pointwise stabilizer of the earlier base points.
    pub fn insert(&mut self, g: Perm, entry: usize, base_hint: &[u32]) {
        let (residue, drop) = self.sift_from(g, entry);
        if residue.is_identity() {
            return;
        }
        if drop == self.levels.len() {
            let point = choose_base_point(&residue, &self.base(), base_hint);
            self.levels.push(Level::new(point, self.degree));
        }
        for m in entry..=drop {
            self.levels[m].gens.push(residue.clone());
            self.levels[m].scanned.push(0);
        }
        for m in (entry..=drop).rev() {
            self.close_level(m, base_hint);
        }
    }

    /// Schreier closure at one level: expand the fundamental orbit and sift
    /// every Schreier generator into the deeper chain.
    fn close_level(&mut self, l: usize, base_hint: &[u32]) {
        loop {
            let mut progressed = false;
            let n_gens = self.levels[l].gens.len();
            for k in 0..n_gens {
                loop {
                    let (beta, gen, u_beta) = {
                        let lev = &self.levels[l];
                        if lev.scanned[k] >= lev.orbit.len() {
                            break;
                        }
                        let j = lev.scanned[k];
                        (lev.orbit[j], lev.gens[k].clone(), lev.trans[j].clone())
                    };
                    progressed = true;
                    let delta = gen.apply(beta);
                    if !self.levels[l].in_orbit(delta) {
                        let u_delta = u_beta.then(&gen);
                        let lev = &mut self.levels[l];
                        lev.pos[delta as usize] = lev.orbit.len() as u32 + 1;
                        lev.orbit.push(delta);
                        lev.trans_inv.push(u_delta.inverse());
                        lev.trans.push(u_delta);
                    }
                    // Schreier generator u_β · gen · u_δ⁻¹ fixes this
                    // level's base point; push its residue deeper.
                    let schreier = {
                        let lev = &self.levels[l];
                        u_beta.then(&gen).then(lev.transversal_from(delta))
                    };
                    self.levels[l].scanned[k] += 1;
                    if !schreier.is_identity() {
                        self.insert(schreier, l + 1, base_hint);
                    }
                }
            }
            if !progressed {
                break;
            }
        }
    }
}

/// Pick the base point for a new level: the first hinted point not already
/// in the base, falling back to the generator's smallest moved point. A
/// hinted point the generator fixes still becomes the base point (the level
/// then has a trivial fundamental orbit, which is valid), so hints reliably
/// become base-prefix points.
fn choose_base_point(g: &Perm, existing_base: &[u32], hint: &[u32]) -> u32 {
    for &h in hint {
        if !existing_base.contains(&h) {
            return h;
        }
    }
    (0..g.degree() as u32)
        .find(|&p| g.apply(p) != p)
        .expect("non-identity permutation moves a point")
}

/// A permutation group with a verified stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
}

impl PermGroup {
    /// Build a group from generators with the deterministic Schreier–Sims
    /// procedure.
    pub fn from_generators(gens: Vec<Perm>, degree: usize) -> PermResult<Self> {
        Self::with_base_hint(gens, degree, &[])
    }

    /// Build with a preferred sequence of base points (used for point
    /// stabilizers and reproducible base changes).
    pub fn with_base_hint(gens: Vec<Perm>, degree: usize, hint: &[u32]) -> PermResult<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(format!(
                    "generator degree {} vs group degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut chain = StabChain::trivial(degree);
        for g in &gens {
            chain.insert(g.clone(), 0, hint);
        }
        Ok(PermGroup { degree, gens, chain })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: StabChain::trivial(degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigInt {
        self.chain.order()
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Add one generator, extending the chain incrementally.
    pub fn add_generator(&mut self, g: Perm) -> PermResult<()> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch(format!(
                "generator degree {} vs group degree {}",
                g.degree(),
                self.degree
            )));
        }
        let base = self.chain.base();
        self.chain.insert(g.clone(), 0, &base);
        self.gens.push(g);
        Ok(())
    }

    /// The pointwise stabilizer of the first `k` base points, as a group
    /// sharing this group's chain structure below level `k`.
    pub fn base_prefix_stabilizer(&self, k: usize) -> PermGroup {
        let k = k.min(self.chain.levels.len());
        let levels: Vec<Level> = self.chain.levels[k..].to_vec();
        let gens = if let Some(first) = levels.first() {
            first.gens.clone()
        } else {
            Vec::new()
        };
        PermGroup {
            degree: self.degree,
            gens,
            chain: StabChain { degree: self.degree, levels },
        }
    }

    /// Stabilizer of a single point, built by re-running Schreier–Sims with
    /// the point as the first base point.
    pub fn point_stabilizer(&self, p: u32) -> PermResult<PermGroup> {
        if let Some(first) = self.chain.levels.first() {
            if first.point == p {
                return Ok(self.base_prefix_stabilizer(1));
            }
        }
        let rebased = PermGroup::with_base_hint(self.gens.clone(), self.degree, &[p])?;
        match rebased.chain.levels.first() {
            Some(first) if first.point == p => Ok(rebased.base_prefix_stabilizer(1)),
            // No generator moves p: the whole group stabilizes it.
            _ => Ok(rebased),
        }
    }

    /// All elements, in a deterministic order; errors when the order exceeds
    /// the budget.
    pub fn elements(&self, budget: usize) -> PermResult<Vec<Perm>> {
        if self.order() > BigInt::from(budget) {
            return Err(PermError::Budget(format!(
                "group order {} exceeds element-enumeration budget {budget}",
                self.order()
            )));
        }
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit_len());
            for j in 0..level.orbit_len() {
                let u = level.transversal_at(j);
                for e in &out {
                    next.push(e.then(u));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// A uniformly random element: product of uniform transversal picks.
    pub fn random_element<R: FnMut(usize) -> usize>(&self, mut pick: R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.chain.levels.iter().rev() {
            let j = pick(level.orbit_len());
            g = g.then(level.transversal_at(j));
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(img: &[u32]) -> Perm {
        Perm::from_images(img.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        let g = PermGroup::from_generators(
            vec![p(&[1, 0, 2, 3, 4]), p(&[1, 2, 3, 4, 0])],
            5,
        )
        .unwrap();
        assert_eq!(g.order(), BigInt::from(120));
        assert!(g.contains(&p(&[4, 3, 2, 1, 0])));
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let g = PermGroup::from_generators(vec![], 6).unwrap();
        assert_eq!(g.order(), BigInt::one());
        assert!(g.contains(&Perm::identity(6)));
        assert!(!g.contains(&p(&[1, 0, 2, 3, 4, 5])));
    }

    #[test]
    fn dihedral_group_membership() {
        let rot = p(&[1, 2, 3, 4, 5, 0]);
        let refl = p(&[0, 5, 4, 3, 2, 1]);
        let g = PermGroup::from_generators(vec![rot.clone(), refl.clone()], 6).unwrap();
        assert_eq!(g.order(), BigInt::from(12));
        assert!(g.contains(&rot.then(&refl)));
        assert!(!g.contains(&p(&[1, 0, 2, 3, 4, 5])));
    }

    #[test]
    fn elements_enumeration_matches_order() {
        let g = PermGroup::from_generators(
            vec![p(&[1, 2, 0, 3]), p(&[0, 2, 1, 3])],
            4,
        )
        .unwrap();
        let els = g.elements(100).unwrap();
        assert_eq!(BigInt::from(els.len()), g.order());
        let mut distinct = els.clone();
        distinct.sort_by(|a, b| a.images().cmp(b.images()));
        distinct.dedup();
        assert_eq!(distinct.len(), els.len());
        for e in &els {
            assert!(g.contains(e));
        }
    }

    #[test]
    fn point_stabilizer_has_orbit_index() {
        let g = PermGroup::from_generators(
            vec![p(&[1, 0, 2, 3, 4]), p(&[1, 2, 3, 4, 0])],
            5,
        )
        .unwrap();
        let s = g.point_stabilizer(3).unwrap();
        assert_eq!(s.order(), BigInt::from(24));
        for h in s.generators() {
            assert_eq!(h.apply(3), 3);
            assert!(g.contains(h));
        }
    }

    #[test]
    fn base_change_preserves_order() {
        let gens = vec![p(&[1, 2, 3, 4, 5, 6, 0]), p(&[1, 0, 2, 3, 4, 5, 6])];
        let g1 = PermGroup::from_generators(gens.clone(), 7).unwrap();
        for hint in [&[6u32, 5, 4][..], &[3, 1][..], &[0, 6, 2, 4][..]] {
            let g2 = PermGroup::with_base_hint(gens.clone(), 7, hint).unwrap();
            assert_eq!(g1.order(), g2.order());
        }
    }
}
