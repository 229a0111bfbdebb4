//! Right-coset spaces `H\G` with canonical representatives.
//!
//! A coset `H·g` is canonicalized by greedily minimizing the images of `H`'s
//! base points: at each level of `H`'s chain the representative is replaced
//! by `u·r` for the transversal element `u` whose base-point image under `r`
//! is smallest. The set of minimizers at each level is a coset of the next
//! stabilizer in the chain, so the greedy descent ends at a unique element
//! of `H·g`. Cosets are then keyed by the images of `G`'s base under the
//! canonical representative, which determine it inside `G`.

use crate::chain::PermGroup;
use crate::error::{PermError, PermResult};
use crate::perm::Perm;
use num_bigint::BigInt;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct CosetSpace {
    degree: usize,
    g_base: Vec<u32>,
    /// Canonical representative of each coset; index 0 is the coset of the
    /// identity.
    reps: Vec<Perm>,
    /// Canonical key (G-base images of the canonical representative) to
    /// coset index.
    index: HashMap<Vec<u32>, usize>,
    /// `action[k][i]` is the coset reached from coset `i` by ambient
    /// generator `k`.
    action: Vec<Vec<u32>>,
    subgroup_order: BigInt,
}

impl CosetSpace {
    /// Build the space of right cosets of `h` in `g` by orbit expansion from
    /// the identity coset. Fails when `h` is not a subgroup of `g` or the
    /// index exceeds `max_cosets`.
    pub fn build(g: &PermGroup, h: &PermGroup, max_cosets: usize) -> PermResult<CosetSpace> {
        if h.degree() != g.degree() {
            return Err(PermError::DegreeMismatch(format!(
                "subgroup degree {} vs ambient degree {}",
                h.degree(),
                g.degree()
            )));
        }
        if !h.is_subgroup_of(g) {
            return Err(PermError::NotSubgroup(
                "subgroup generators do not sift through the ambient chain".into(),
            ));
        }
        let g_base = g.base();
        let mut space = CosetSpace {
            degree: g.degree(),
            g_base,
            reps: Vec::new(),
            index: HashMap::new(),
            action: vec![Vec::new(); g.generators().len()],
            subgroup_order: h.order(),
        };
        let id_rep = canonical_rep(h, Perm::identity(g.degree()));
        space.index.insert(space.key_of(&id_rep), 0);
        space.reps.push(id_rep);
        let mut head = 0;
        while head < space.reps.len() {
            let rep = space.reps[head].clone();
            for (k, s) in g.generators().iter().enumerate() {
                let moved = canonical_rep(h, rep.then(s));
                let key = space.key_of(&moved);
                let next = space.index.len();
                let idx = *space.index.entry(key).or_insert(next);
                if idx == next {
                    if space.reps.len() >= max_cosets {
                        return Err(PermError::Budget(format!(
                            "coset space exceeds cap of {max_cosets} cosets"
                        )));
                    }
                    space.reps.push(moved);
                }
                space.action[k].push(idx as u32);
            }
            head += 1;
        }
        Ok(space)
    }

    fn key_of(&self, rep: &Perm) -> Vec<u32> {
        self.g_base.iter().map(|&b| rep.apply(b)).collect()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, i: usize) -> &Perm {
        &self.reps[i]
    }

    /// Degree of the underlying point action.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn subgroup_order(&self) -> &BigInt {
        &self.subgroup_order
    }

    /// Induced image of ambient generator `k` as a permutation of the
    /// cosets.
    pub fn generator_action(&self, k: usize) -> PermResult<Perm> {
        Perm::from_images(self.action[k].clone())
    }

    /// Coset index of `H·g` for an arbitrary ambient element, via the same
    /// canonicalization used at build time.
    pub fn coset_of(&self, h: &PermGroup, g_elt: &Perm) -> PermResult<usize> {
        let rep = canonical_rep(h, g_elt.clone());
        self.index
            .get(&self.key_of(&rep))
            .copied()
            .ok_or_else(|| PermError::Domain("element lies outside the ambient group".into()))
    }

    /// Number and sizes of `K`-orbits on the cosets, for a subgroup `K` of
    /// the ambient group given by generators. Orbit sizes are returned
    /// sorted increasingly.
    pub fn orbit_count_under(
        &self,
        h: &PermGroup,
        k_gens: &[Perm],
    ) -> PermResult<(usize, Vec<usize>)> {
        let mut id = vec![usize::MAX; self.reps.len()];
        let mut sizes = Vec::new();
        for start in 0..self.reps.len() {
            if id[start] != usize::MAX {
                continue;
            }
            let oid = sizes.len();
            id[start] = oid;
            let mut queue = vec![start];
            let mut size = 0usize;
            while let Some(i) = queue.pop() {
                size += 1;
                for s in k_gens {
                    let moved = canonical_rep(h, self.reps[i].then(s));
                    let j = *self
                        .index
                        .get(&self.key_of(&moved))
                        .ok_or_else(|| PermError::NotSubgroup(
                            "orbit generator leaves the coset space".into(),
                        ))?;
                    if id[j] == usize::MAX {
                        id[j] = oid;
                        queue.push(j);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        Ok((sizes.len(), sizes))
    }
}

/// The canonical (greedy base-image-minimal) element of the right coset
/// `H·g`.
pub fn canonical_rep(h: &PermGroup, g_elt: Perm) -> Perm {
    let mut r = g_elt;
    for level in &h.chain().levels {
        let mut best: Option<(u32, u32)> = None; // (image, orbit point)
        for &delta in level.orbit() {
            let v = r.apply(delta);
            if best.map_or(true, |(bv, _)| v < bv) {
                best = Some((v, delta));
            }
        }
        let (_, delta) = best.expect("fundamental orbits are nonempty");
        if delta != level.point {
            r = level.transversal_to(delta).then(&r);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(img: &[u32]) -> Perm {
        Perm::from_images(img.to_vec()).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::from_generators(vec![p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])], 4).unwrap()
    }

    #[test]
    fn whole_group_gives_single_coset() {
        let g = s4();
        let cs = CosetSpace::build(&g, &g, 100).unwrap();
        assert_eq!(cs.len(), 1);
    }

    #[test]
    fn point_stabilizer_cosets_match_orbit() {
        let g = s4();
        let h = g.point_stabilizer(2).unwrap();
        let cs = CosetSpace::build(&g, &h, 100).unwrap();
        assert_eq!(cs.len(), 4);
        assert_eq!(
            BigInt::from(cs.len()) * cs.subgroup_order(),
            g.order(),
            "index times subgroup order is the group order"
        );
    }

    #[test]
    fn canonical_rep_is_constant_on_cosets() {
        let g = s4();
        let h = g.point_stabilizer(0).unwrap();
        let elts = g.elements(100).unwrap();
        for e in &elts {
            for hh in h.elements(100).unwrap() {
                let same = canonical_rep(&h, hh.then(e));
                assert_eq!(same, canonical_rep(&h, e.clone()));
            }
        }
    }

    #[test]
    fn trivial_subgroup_enumerates_group() {
        let g = s4();
        let h = PermGroup::trivial(4);
        let cs = CosetSpace::build(&g, &h, 100).unwrap();
        assert_eq!(cs.len(), 24);
        // Induced action of each generator is a permutation respecting
        // products.
        let a0 = cs.generator_action(0).unwrap();
        let a1 = cs.generator_action(1).unwrap();
        let prod = g.generators()[0].then(&g.generators()[1]);
        for i in 0..cs.len() {
            let via_tables = a1.apply(a0.apply(i as u32));
            let direct = cs.coset_of(&h, &cs.representative(i).then(&prod)).unwrap();
            assert_eq!(via_tables, direct as u32);
        }
    }

    #[test]
    fn orbit_counts_on_cosets() {
        let g = s4();
        let h = g.point_stabilizer(1).unwrap();
        let cs = CosetSpace::build(&g, &h, 100).unwrap();
        // Trivial K: every coset its own orbit.
        let (n, sizes) = cs.orbit_count_under(&h, &[]).unwrap();
        assert_eq!(n, cs.len());
        assert!(sizes.iter().all(|&s| s == 1));
        // K = ambient: single orbit covering everything.
        let (n, sizes) = cs.orbit_count_under(&h, g.generators()).unwrap();
        assert_eq!(n, 1);
        assert_eq!(sizes, vec![cs.len()]);
        // Sum of orbit sizes is the index.
        let k_gens = vec![p(&[1, 0, 3, 2])];
        let (_, sizes) = cs.orbit_count_under(&h, &k_gens).unwrap();
        assert_eq!(sizes.iter().sum::<usize>(), cs.len());
    }

    #[test]
    fn rejects_non_subgroups() {
        let g = PermGroup::from_generators(vec![p(&[1, 2, 0, 3])], 4).unwrap();
        let not_sub = PermGroup::from_generators(vec![p(&[1, 0, 2, 3])], 4).unwrap();
        assert!(matches!(
            CosetSpace::build(&g, &not_sub, 100),
            Err(PermError::NotSubgroup(_))
        ));
    }

    #[test]
    fn index_one_check() {
        let g = s4();
        let h = s4();
        let cs = CosetSpace::build(&g, &h, 10).unwrap();
        assert_eq!(cs.subgroup_order() * BigInt::from(cs.len()), g.order());
        assert_eq!(BigInt::one() * cs.len(), BigInt::one());
    }
}
