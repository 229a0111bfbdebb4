//! Orbit computations: on the permutation domain, and on explicit domains
//! of arbitrary hashable objects with a supplied action.

use crate::error::{PermError, PermResult};
use crate::perm::Perm;
use std::collections::HashMap;
use std::hash::Hash;

/// A partition of `0..n` into orbits, canonically ordered by smallest
/// member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Orbit id per point.
    pub id: Vec<usize>,
    /// Orbits, each sorted increasingly; orbits ordered by first member.
    pub orbits: Vec<Vec<u32>>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn sorted_sizes(&self) -> Vec<usize> {
        let mut s = self.sizes();
        s.sort_unstable();
        s
    }
}

/// Orbits of the group generated by `gens` on the full domain.
pub fn orbit_partition(degree: usize, gens: &[Perm]) -> OrbitPartition {
    orbit_partition_on(degree, gens, (0..degree as u32).collect())
}

/// Orbits restricted to a subset of points (the subset must be closed under
/// the generators; points outside are ignored).
pub fn orbit_partition_on(degree: usize, gens: &[Perm], points: Vec<u32>) -> OrbitPartition {
    let mut id = vec![usize::MAX; degree];
    let mut orbits = Vec::new();
    for &start in &points {
        if id[start as usize] != usize::MAX {
            continue;
        }
        let oid = orbits.len();
        let mut orbit = vec![start];
        id[start as usize] = oid;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.apply(p);
                if id[q as usize] == usize::MAX {
                    id[q as usize] = oid;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    OrbitPartition { id, orbits }
}

/// Single-point orbit with a transporter to each member: `point^(witness)`
/// equals the member.
pub fn orbit_with_transporters(point: u32, gens: &[Perm], degree: usize) -> Vec<(u32, Perm)> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut out = vec![(point, Perm::identity(degree))];
    let mut head = 0;
    while head < out.len() {
        let (p, w) = out[head].clone();
        head += 1;
        for g in gens {
            let q = g.apply(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                out.push((q, w.then(g)));
            }
        }
    }
    out
}

/// An element of `⟨gens⟩` carrying `from` to `to`, if they lie in the same
/// orbit.
pub fn point_transporter(from: u32, to: u32, gens: &[Perm], degree: usize) -> Option<Perm> {
    orbit_with_transporters(from, gens, degree)
        .into_iter()
        .find(|(p, _)| *p == to)
        .map(|(_, w)| w)
}

/// Orbit partition of an explicit domain of objects under per-generator
/// actions. `act(k, x)` applies generator `k`; its result must again lie in
/// the domain, otherwise an error is raised.
pub fn orbit_partition_by<T, F>(
    domain: &[T],
    n_gens: usize,
    mut act: F,
) -> PermResult<OrbitPartition>
where
    T: Hash + Eq + Clone,
    F: FnMut(usize, &T) -> T,
{
    let index: HashMap<&T, usize> = domain.iter().enumerate().map(|(i, x)| (x, i)).collect();
    if index.len() != domain.len() {
        return Err(PermError::Domain("duplicate elements in explicit domain".into()));
    }
    let mut id = vec![usize::MAX; domain.len()];
    let mut orbits = Vec::new();
    for start in 0..domain.len() {
        if id[start] != usize::MAX {
            continue;
        }
        let oid = orbits.len();
        let mut orbit = vec![start as u32];
        id[start] = oid;
        let mut head = 0;
        while head < orbit.len() {
            let i = orbit[head] as usize;
            head += 1;
            for k in 0..n_gens {
                let y = act(k, &domain[i]);
                let j = *index.get(&y).ok_or_else(|| {
                    PermError::Domain("action leaves the explicit domain".into())
                })?;
                if id[j] == usize::MAX {
                    id[j] = oid;
                    orbit.push(j as u32);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(OrbitPartition { id, orbits })
}
