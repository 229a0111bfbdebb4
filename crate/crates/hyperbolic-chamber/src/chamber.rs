//! The fundamental chamber data structure: simple roots, extreme rays, the
//! ray Gram matrix, and the Coxeter diagram on the roots.

use crate::error::{ChamberError, ChamberResult};
use exact_core::mat::det_int;
use exact_core::{IMat, IVec, Lattice};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A fundamental domain of the reflection group, cut out by simple roots of
/// norm −2, together with the extreme rays of the chamber cone.
///
/// Rays are sorted by (norm ascending, coordinates); when the chamber is
/// simplicial with as many roots as the rank, roots are stored in the dual
/// order (root `i` is the unique root pairing positively with ray `i`).
#[derive(Clone, Debug)]
pub struct CoxeterChamber {
    pub lattice: Lattice,
    pub simple_roots: Vec<IVec>,
    /// Conventional node labels for the roots (see `t_shape_labels`); plain
    /// indices when no special convention applies.
    pub root_labels: Vec<i32>,
    pub rays: Vec<IVec>,
    /// Pairwise products of the rays.
    pub ray_gram: IMat,
    /// Edges (i, j), i < j, between roots with nonzero product.
    pub diagram: Vec<(usize, usize)>,
    /// Whether the rays form a Z-basis of the lattice.
    pub rays_are_basis: bool,
    interior: IVec,
}

impl CoxeterChamber {
    /// Validate and assemble a chamber from computed roots and rays.
    pub fn assemble(lattice: Lattice, roots: Vec<IVec>, rays: Vec<IVec>) -> ChamberResult<Self> {
        let n = lattice.rank();
        for r in &roots {
            if lattice.norm(r) != BigInt::from(-2) {
                return Err(ChamberError::Domain(format!(
                    "simple root {r:?} does not have norm -2"
                )));
            }
        }
        for (i, a) in roots.iter().enumerate() {
            for b in roots.iter().skip(i + 1) {
                let p = lattice.pair(a, b);
                if !(p.is_zero() || p.is_one()) {
                    return Err(ChamberError::Domain(format!(
                        "root product {p} outside {{0, 1}}: only simply-laced diagrams are supported"
                    )));
                }
            }
        }
        for g in &rays {
            for r in &roots {
                if lattice.pair(g, r).is_negative() {
                    return Err(ChamberError::Domain(
                        "a ray pairs negatively with a simple root".into(),
                    ));
                }
            }
        }

        // Canonical ray order: by norm, then by coordinates.
        let mut rays = rays;
        rays.sort_by(|a, b| (lattice.norm(a), a).cmp(&(lattice.norm(b), b)));

        // In the simplicial full-rank case, store roots dual to the rays.
        let mut roots = roots;
        if roots.len() == n && rays.len() == n {
            let mut reordered = Vec::with_capacity(n);
            for g in &rays {
                let touching: Vec<&IVec> = roots
                    .iter()
                    .filter(|r| lattice.pair(g, r).is_positive())
                    .collect();
                if touching.len() != 1 {
                    return Err(ChamberError::Domain(format!(
                        "ray pairs positively with {} roots; simplicial duality fails",
                        touching.len()
                    )));
                }
                reordered.push(touching[0].clone());
            }
            let mut sorted_check = reordered.clone();
            sorted_check.sort();
            let mut orig = roots.clone();
            orig.sort();
            if sorted_check != orig {
                return Err(ChamberError::Domain(
                    "root/ray duality is not a bijection".into(),
                ));
            }
            roots = reordered;
        }

        let ray_mat = IMat::from_rows(rays.clone());
        let ray_gram = ray_mat.mul(&lattice.gram).mul(&ray_mat.transpose());
        for i in 0..rays.len() {
            for j in 0..rays.len() {
                if ray_gram.at(i, j).is_negative() {
                    return Err(ChamberError::Domain(
                        "negative ray product: rays do not lie in one closed cone".into(),
                    ));
                }
            }
        }
        let rays_are_basis =
            rays.len() == n && det_int(&ray_mat).abs().is_one();

        let mut diagram = Vec::new();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if !lattice.pair(&roots[i], &roots[j]).is_zero() {
                    diagram.push((i, j));
                }
            }
        }
        let root_labels = t_shape_labels(roots.len(), &diagram)
            .unwrap_or_else(|| (0..roots.len() as i32).collect());

        let mut interior = vec![BigInt::zero(); n];
        for g in &rays {
            for (acc, e) in interior.iter_mut().zip(g.iter()) {
                *acc += e;
            }
        }
        for r in &roots {
            if !lattice.pair(&interior, r).is_positive() {
                return Err(ChamberError::Domain(
                    "ray sum is not strictly inside the chamber".into(),
                ));
            }
        }

        Ok(CoxeterChamber {
            lattice,
            simple_roots: roots,
            root_labels,
            rays,
            ray_gram,
            diagram,
            rays_are_basis,
            interior,
        })
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// A vector strictly inside the chamber (the sum of the rays).
    pub fn interior_point(&self) -> &IVec {
        &self.interior
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.lattice.pair(x, y)
    }

    /// Index of the root carrying `label`.
    pub fn index_of_label(&self, label: i32) -> Option<usize> {
        self.root_labels.iter().position(|&l| l == label)
    }

    /// The reflection in simple root `i` applied to `v` (root norms are −2,
    /// so σ(v) = v + (v·r)·r).
    pub fn reflect(&self, i: usize, v: &[BigInt]) -> IVec {
        let p = self.lattice.pair(v, &self.simple_roots[i]);
        v.iter()
            .zip(self.simple_roots[i].iter())
            .map(|(x, r)| x + &p * r)
            .collect()
    }
}

/// Conventional labels for a 10-node tree with one degree-3 node and legs of
/// lengths 1, 2 and 6: the center is 5; the length-1 leg is 8; the length-2
/// leg is 6, 7 outward; the length-6 leg is 4, 3, 2, 1, 0, −1 outward.
fn t_shape_labels(n: usize, edges: &[(usize, usize)]) -> Option<Vec<i32>> {
    if n != 10 || edges.len() != 9 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let center = {
        let mut deg3 = adj.iter().enumerate().filter(|(_, a)| a.len() == 3);
        let c = deg3.next()?.0;
        if deg3.next().is_some() || adj.iter().any(|a| a.len() > 3) {
            return None;
        }
        c
    };
    // Walk the three legs outward from the center.
    let mut legs: Vec<Vec<usize>> = Vec::new();
    for &start in &adj[center] {
        let mut leg = vec![start];
        let mut prev = center;
        let mut cur = start;
        loop {
            let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
            match next.len() {
                0 => break,
                1 => {
                    prev = cur;
                    cur = next[0];
                    leg.push(cur);
                }
                _ => return None,
            }
        }
        legs.push(leg);
    }
    legs.sort_by_key(Vec::len);
    if legs.iter().map(Vec::len).collect::<Vec<_>>() != vec![1, 2, 6] {
        return None;
    }
    let mut labels = vec![0i32; n];
    labels[center] = 5;
    labels[legs[0][0]] = 8;
    for (k, &node) in legs[1].iter().enumerate() {
        labels[node] = 6 + k as i32;
    }
    for (k, &node) in legs[2].iter().enumerate() {
        labels[node] = 4 - k as i32;
    }
    Some(labels)
}
