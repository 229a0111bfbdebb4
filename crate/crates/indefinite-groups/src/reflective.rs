//! Fundamental polytopes of the full reflection subgroups of hyperbolic
//! lattices: Vinberg's algorithm over all reflective root norms, with the
//! polyhedral (extreme-ray) finite-volume termination test, so chambers
//! need not be simplicial.
//!
//! A vector r with r² < 0 is *reflective* when the reflection
//! σ_r(x) = x − 2(x·r)/r²·r is integral on the lattice, i.e. r² | 2·div(r)
//! with div(r) = gcd of r's pairings with the lattice. For primitive r the
//! class r/div(r) has order div(r) in the discriminant group, so
//! |r²| ≤ 2·div(r) ≤ 2·exponent(D(L)) bounds the candidate norms.
//!
//! Roots are accepted in order of the mirror distance invariant
//! (r·v0)²/|r²| from a controlling vector v0, keeping a candidate exactly
//! when it pairs ≥ 0 with everything accepted; the walk stops as soon as
//! the cone cut out by the accepted roots is pointed with all extreme rays
//! of norm ≥ 0 (finite covolume), and fails loudly if the budget runs out.

use std::collections::HashSet;

use exact_core::mat::{dot, gram_pair, row_mul};
use exact_core::{IMat, IVec, Lattice, QMat};
use hyperbolic_chamber::solver::{lex_positive, vectors_with_norm_and_pairing};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GroupError, GroupResult};
use crate::rays::{extreme_rays, facet_indices};

/// Fundamental polytope of the full reflection subgroup W(L) of a
/// hyperbolic lattice, with its extreme rays.
#[derive(Clone, Debug)]
pub struct ReflectivePolytope {
    pub lattice: Lattice,
    /// Controlling vector (interior-or-boundary point of the polytope).
    pub control: IVec,
    /// Accepted simple roots in distance order; the polytope is
    /// {x : x·wall ≥ 0 for all walls}. All primitive, all reflective.
    pub walls: Vec<IVec>,
    /// Primitive generators of the extreme rays, sorted; every norm ≥ 0.
    pub rays: Vec<IVec>,
}

impl ReflectivePolytope {
    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Gram matrix of the walls.
    pub fn wall_gram(&self) -> IMat {
        let w = IMat::from_rows(self.walls.clone());
        w.mul(&self.lattice.gram).mul(&w.transpose())
    }

    /// The isotropic extreme rays (cusps of the polytope), primitive.
    pub fn cusps(&self) -> Vec<IVec> {
        self.rays
            .iter()
            .filter(|r| self.lattice.norm(r).is_zero())
            .cloned()
            .collect()
    }

    /// The reflection in wall `i` as an integral matrix acting on rows.
    pub fn reflection(&self, i: usize) -> IMat {
        reflection_matrix(&self.lattice, &self.walls[i])
    }
}

/// σ_r as an integral matrix: x ↦ x − 2(x·r)/r²·r. Panics if r is not
/// reflective for the lattice (callers only pass checked roots).
pub fn reflection_matrix(l: &Lattice, r: &[BigInt]) -> IMat {
    let n = l.rank();
    let beta = l.norm(r);
    let a = row_mul(r, &l.gram);
    let mut m = IMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let num = BigInt::from(2) * &a[i] * &r[j];
            let (q, rem) = num.div_rem(&beta);
            assert!(rem.is_zero(), "non-integral reflection");
            let e = m.at(i, j) - q;
            m.set(i, j, e);
        }
    }
    m
}

/// gcd of the pairings of r with the lattice (= gcd of G·rᵀ).
pub fn divisibility(l: &Lattice, r: &[BigInt]) -> BigInt {
    row_mul(r, &l.gram)
        .iter()
        .fold(BigInt::zero(), |acc, e| acc.gcd(e))
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e))
}

/// Whether r is a primitive reflective vector of negative norm.
pub fn is_reflective_root(l: &Lattice, r: &[BigInt]) -> bool {
    let beta = l.norm(r);
    if !beta.is_negative() || content(r) != BigInt::one() {
        return false;
    }
    (BigInt::from(2) * divisibility(l, r)) % beta == BigInt::zero()
}

/// A primitive integral vector of positive norm, found by exact congruent
/// diagonalization of the Gram matrix. Exists whenever the signature has
/// a positive part.
pub fn timelike_vector(l: &Lattice) -> GroupResult<IVec> {
    let n = l.rank();
    let mut g = exact_core::to_rational(&l.gram);
    let mut p = QMat::identity(n);
    for i in 0..n {
        if g.at(i, i).is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !g.at(j, j).is_zero()) {
                g.swap_rows(i, j);
                g.swap_cols(i, j);
                p.swap_rows(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !g.at(i, j).is_zero()) {
                let one = BigRational::one();
                g.add_row_multiple(i, j, &one);
                g.add_col_multiple(i, j, &one);
                p.add_row_multiple(i, j, &one);
            } else {
                continue;
            }
        }
        let piv = g.at(i, i).clone();
        for j in i + 1..n {
            if g.at(j, i).is_zero() {
                continue;
            }
            let f = -(g.at(j, i) / &piv);
            g.add_row_multiple(j, i, &f);
            g.add_col_multiple(j, i, &f);
            p.add_row_multiple(j, i, &f);
        }
    }
    for i in 0..n {
        if g.at(i, i).is_positive() {
            let row = p.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            let v: IVec = row
                .iter()
                .map(|e| (e * BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            let c = content(&v);
            return Ok(v.iter().map(|e| e / &c).collect());
        }
    }
    Err(GroupError::Domain(
        "no positive-norm vector: form is negative semidefinite".into(),
    ))
}

/// Budgets for the reflective walk.
#[derive(Clone, Copy, Debug)]
pub struct ReflectiveBudget {
    /// Abort once more than this many walls are accepted.
    pub wall_cap: usize,
    /// Abort once the distance invariant (r·v0)²/|r²| exceeds this.
    pub weight_cap: i64,
}

impl Default for ReflectiveBudget {
    fn default() -> Self {
        ReflectiveBudget {
            wall_cap: 120,
            weight_cap: 300,
        }
    }
}

/// All candidate root norms: −1 ≥ β ≥ −2·exponent(D(L)), even when the
/// lattice is even.
fn root_norms(l: &Lattice) -> GroupResult<Vec<BigInt>> {
    let exp = l.dual_exponent()?.abs();
    let bound = BigInt::from(2) * exp;
    let mut out = Vec::new();
    let mut b = BigInt::from(if l.is_even() { 2 } else { 1 });
    let step = BigInt::from(if l.is_even() { 2 } else { 1 });
    while b <= bound {
        out.push(-b.clone());
        b += &step;
    }
    Ok(out)
}

/// Distance-ordered stream of (norm, pairing) buckets.
struct TierQueue {
    /// (weight numerator k², weight denominator |β|, norm, k), kept sorted
    /// ascending by exact weight, ties by (|β|, k).
    heap: std::collections::BinaryHeap<std::cmp::Reverse<TierKey>>,
}

#[derive(PartialEq, Eq)]
struct TierKey {
    num: BigInt,
    den: BigInt,
    beta: BigInt,
    k: BigInt,
}

impl Ord for TierKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        lhs.cmp(&rhs)
            .then_with(|| self.den.cmp(&other.den))
            .then_with(|| self.k.cmp(&other.k))
    }
}

impl PartialOrd for TierKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl TierQueue {
    fn new(norms: &[BigInt]) -> Self {
        let mut heap = std::collections::BinaryHeap::new();
        for b in norms {
            heap.push(std::cmp::Reverse(TierKey {
                num: BigInt::one(),
                den: b.abs(),
                beta: b.clone(),
                k: BigInt::one(),
            }));
        }
        TierQueue { heap }
    }

    fn pop(&mut self) -> Option<(BigInt, BigInt, BigRational)> {
        let std::cmp::Reverse(key) = self.heap.pop()?;
        let weight = BigRational::new(key.num.clone(), key.den.clone());
        let next_k = &key.k + 1;
        self.heap.push(std::cmp::Reverse(TierKey {
            num: &next_k * &next_k,
            den: key.den.clone(),
            beta: key.beta.clone(),
            k: next_k,
        }));
        Some((key.beta, key.k, weight))
    }
}

/// Run Vinberg's algorithm with all reflective norms from the controlling
/// vector `v0` (found automatically when not supplied). Succeeds exactly
/// when the reflection subgroup has finite covolume within the budget.
pub fn reflective_polytope(
    l: &Lattice,
    v0: Option<IVec>,
    budget: ReflectiveBudget,
) -> GroupResult<ReflectivePolytope> {
    let n = l.rank();
    let sig = l.signature();
    if sig.p != 1 || sig.k != 0 || n < 2 {
        return Err(GroupError::Domain(format!(
            "lattice must be nondegenerate of signature (1, n−1), got ({}, {}, ker {})",
            sig.p, sig.q, sig.k
        )));
    }
    let v0 = match v0 {
        Some(v) => {
            if v.len() != n || !l.norm(&v).is_positive() {
                return Err(GroupError::Domain(
                    "controlling vector must be timelike".into(),
                ));
            }
            v
        }
        None => timelike_vector(l)?,
    };

    let norms = root_norms(l)?;
    // Stage 0: the finite root system orthogonal to v0; keep one simple
    // system, via the positive-system decomposability test.
    let mut pool: Vec<IVec> = Vec::new();
    for b in &norms {
        for cand in vectors_with_norm_and_pairing(l, &v0, &BigInt::zero(), b)? {
            if lex_positive(&cand) && is_reflective_root(l, &cand) {
                pool.push(cand);
            }
        }
    }
    pool.sort();
    let pool_set: HashSet<IVec> = pool.iter().cloned().collect();
    let mut accepted: Vec<IVec> = Vec::new();
    for r in &pool {
        let decomposable = pool.iter().any(|p| {
            let rest: IVec = r.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
            pool_set.contains(&rest)
        });
        if !decomposable {
            accepted.push(r.clone());
        }
    }
    for i in 0..accepted.len() {
        for j in 0..i {
            assert!(
                !gram_pair(&accepted[i], &l.gram, &accepted[j]).is_negative(),
                "stage-0 simple system is not mutually obtuse"
            );
        }
    }

    // Distance-ordered acceptance with polyhedral termination.
    let mut tiers = TierQueue::new(&norms);
    let weight_cap = BigRational::from_integer(BigInt::from(budget.weight_cap));
    loop {
        let Some((beta, k, weight)) = tiers.pop() else {
            return Err(GroupError::NotReflective("tier stream exhausted".into()));
        };
        if weight > weight_cap {
            return Err(GroupError::NotReflective(format!(
                "no finite-volume chamber within distance budget: {} walls accepted in rank {n}",
                accepted.len()
            )));
        }
        let mut news = false;
        for cand in vectors_with_norm_and_pairing(l, &v0, &k, &beta)? {
            if !is_reflective_root(l, &cand) {
                continue;
            }
            if accepted
                .iter()
                .all(|a| !gram_pair(&cand, &l.gram, a).is_negative())
            {
                accepted.push(cand);
                news = true;
                if accepted.len() > budget.wall_cap {
                    return Err(GroupError::NotReflective(format!(
                        "wall budget exceeded: more than {} walls accepted in rank {n}",
                        budget.wall_cap
                    )));
                }
            }
        }
        if !news || accepted.len() < n {
            continue;
        }
        let constraints: Vec<IVec> = accepted.iter().map(|r| row_mul(r, &l.gram)).collect();
        if exact_core::hnf::hermite_normal_form(&IMat::from_rows(constraints.clone())).rank() < n {
            continue;
        }
        let rays = extreme_rays(&constraints)?;
        let closed = rays.iter().all(|r| {
            !l.norm(r).is_negative() && dot(r, &row_mul(&v0, &l.gram)).is_positive()
        });
        if !closed {
            continue;
        }
        // Finite covolume reached: every accepted root must support a facet.
        let facets = facet_indices(&constraints, &rays);
        if facets.len() != accepted.len() {
            return Err(GroupError::Domain(format!(
                "internal: {} accepted roots but only {} facets",
                accepted.len(),
                facets.len()
            )));
        }
        return Ok(ReflectivePolytope {
            lattice: l.clone(),
            control: v0,
            walls: accepted,
            rays,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::lattice::{e8, hyperbolic_plane};

    #[test]
    fn reflections_are_isometries() {
        let l = hyperbolic_plane(1).direct_sum(&e8().rescale(-1));
        let r: IVec = [1i64, -1, 0, 0, 0, 0, 0, 0, 0, 0]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert!(is_reflective_root(&l, &r));
        let m = reflection_matrix(&l, &r);
        assert_eq!(m.mul(&l.gram).mul(&m.transpose()), l.gram);
        assert!(m.mul(&m).is_identity());
    }

    #[test]
    fn timelike_vector_is_found() {
        let l = hyperbolic_plane(2).direct_sum(&e8().rescale(-2));
        let v = timelike_vector(&l).unwrap();
        assert!(l.norm(&v).is_positive());
    }

    #[test]
    fn even_unimodular_norms_are_just_minus_two() {
        let l = hyperbolic_plane(1).direct_sum(&e8().rescale(-1));
        assert_eq!(root_norms(&l).unwrap(), vec![BigInt::from(-2)]);
    }
}
