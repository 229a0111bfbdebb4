//! Orbits of full-rank lattices in Q^n under groups of rational matrices
//! acting on row vectors from the right, with Schreier stabilizer
//! generators and coset transversals.
//!
//! A lattice is keyed by the minimal positive integer c with c·Λ ⊆ Z^n
//! together with the canonical Hermite basis of c·Λ; the key is
//! basis-independent, so the breadth-first walk identifies nodes exactly.
//! Since every generator acts bijectively on the (finite) orbit, the
//! semigroup closure under the generators alone is already the full group
//! orbit, and the Schreier generators taken over generator edges only
//! still generate the stabilizer as a group (the inverse-edge Schreier
//! element is the inverse of a generator-edge one).

use std::collections::{HashMap, HashSet, VecDeque};

use exact_core::hnf::row_lattice_basis;
use exact_core::{IMat, QMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{GroupError, GroupResult};

/// Canonical, basis-independent key of a finitely generated full-row-rank
/// lattice Λ ⊂ Q^n: `denom` is the least c > 0 with c·Λ ⊆ Z^n and
/// `hermite` the canonical Hermite basis of c·Λ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatKey {
    pub denom: BigInt,
    pub hermite: IMat,
}

impl LatKey {
    /// The canonical rational basis (Hermite rows divided by the
    /// denominator).
    pub fn basis(&self) -> QMat {
        let c = self.denom.clone();
        self.hermite.map(|e| BigRational::new(e.clone(), c.clone()))
    }
}

/// Canonical key of the lattice spanned over Z by the rows of `basis`.
pub fn lattice_key(basis: &QMat) -> LatKey {
    let mut c = BigInt::one();
    for e in basis.entries() {
        c = c.lcm(e.denom());
    }
    let cq = BigRational::from_integer(c.clone());
    let scaled = basis.map(|e| (e * &cq).to_integer());
    LatKey {
        denom: c,
        hermite: row_lattice_basis(&scaled),
    }
}

/// Specification of a lattice-orbit walk.
pub struct OrbitSpec<'a> {
    /// Matrices acting on lattices (right multiplication on basis rows).
    pub action: &'a [QMat],
    /// Optional source generators mapped onto `action` by a homomorphism;
    /// transversal, transporter and stabilizer elements are products of
    /// these. Defaults to `action` itself.
    pub source: Option<&'a [QMat]>,
    /// Basis rows of the start lattice.
    pub start: QMat,
    /// Stop early (unless a stabilizer is wanted) once this lattice is hit.
    pub target: Option<&'a QMat>,
    pub want_stabilizer: bool,
    pub want_transversal: bool,
    /// Hard cap on orbit nodes; exceeding it is an error, not an answer.
    pub node_cap: usize,
}

/// Result of a lattice-orbit walk.
pub struct OrbitOutcome {
    /// Number of distinct lattices seen (the full orbit unless an early
    /// target exit happened).
    pub orbit_len: usize,
    /// Schreier generators of the stabilizer of the start lattice, in
    /// source coordinates, deduplicated, identity omitted.
    pub stabilizer: Vec<QMat>,
    /// Right-coset transversal: element i maps the start lattice onto
    /// orbit node i, and Stab·t_i are pairwise distinct cosets covering
    /// the whole group when the walk ran to closure.
    pub transversal: Vec<QMat>,
    /// A source element mapping the start lattice onto the target.
    pub transporter: Option<QMat>,
    /// Whether the target (if any) was reached.
    pub target_found: bool,
}

/// Breadth-first orbit of a lattice under a matrix group.
pub fn lattice_orbit(spec: &OrbitSpec) -> GroupResult<OrbitOutcome> {
    let action = spec.action;
    let source = spec.source.unwrap_or(action);
    if source.len() != action.len() {
        return Err(GroupError::Domain(format!(
            "source/action generator counts differ: {} vs {}",
            source.len(),
            action.len()
        )));
    }
    let n = spec.start.cols();
    for a in action {
        if a.rows() != n || a.cols() != n {
            return Err(GroupError::Domain(format!(
                "action matrix is {}x{}, lattice lives in dimension {n}",
                a.rows(),
                a.cols()
            )));
        }
    }
    let sdim = source.first().map(|m| m.rows()).unwrap_or(n);
    let track_words = spec.want_stabilizer || spec.want_transversal || spec.target.is_some();

    let start_key = lattice_key(&spec.start);
    let target_key = spec.target.map(lattice_key);
    let mut transporter: Option<QMat> = None;
    let mut target_found = false;
    if target_key.as_ref() == Some(&start_key) {
        transporter = Some(QMat::identity(sdim));
        target_found = true;
        if !spec.want_stabilizer {
            return Ok(OrbitOutcome {
                orbit_len: 1,
                stabilizer: Vec::new(),
                transversal: vec![QMat::identity(sdim)],
                transporter,
                target_found,
            });
        }
    }

    let mut index: HashMap<LatKey, usize> = HashMap::new();
    let mut keys: Vec<LatKey> = Vec::new();
    let mut words: Vec<QMat> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut stab_set: HashSet<QMat> = HashSet::new();
    let mut stabilizer: Vec<QMat> = Vec::new();

    index.insert(start_key.clone(), 0);
    keys.push(start_key);
    if track_words {
        words.push(QMat::identity(sdim));
    }
    queue.push_back(0);

    while let Some(node) = queue.pop_front() {
        let basis = keys[node].basis();
        for (g, a) in source.iter().zip(action.iter()) {
            let child = lattice_key(&basis.mul(a));
            match index.get(&child) {
                Some(&j) => {
                    if spec.want_stabilizer {
                        // Schreier generator t_node · g · t_j⁻¹.
                        let tj_inv = exact_core::mat::inverse_field(&words[j])?;
                        let sigma = words[node].mul(g).mul(&tj_inv);
                        if !sigma.is_identity() && stab_set.insert(sigma.clone()) {
                            stabilizer.push(sigma);
                        }
                    }
                }
                None => {
                    let id = keys.len();
                    if id >= spec.node_cap {
                        return Err(GroupError::OrbitBudget(format!(
                            "lattice orbit exceeded {} nodes",
                            spec.node_cap
                        )));
                    }
                    index.insert(child.clone(), id);
                    keys.push(child);
                    if track_words {
                        words.push(words[node].mul(g));
                    }
                    queue.push_back(id);
                    if Some(&keys[id]) == target_key.as_ref() {
                        target_found = true;
                        if transporter.is_none() {
                            transporter = Some(words[id].clone());
                        }
                        if !spec.want_stabilizer {
                            return Ok(OrbitOutcome {
                                orbit_len: keys.len(),
                                stabilizer,
                                transversal: if spec.want_transversal {
                                    words
                                } else {
                                    Vec::new()
                                },
                                transporter,
                                target_found,
                            });
                        }
                    }
                }
            }
        }
    }

    Ok(OrbitOutcome {
        orbit_len: keys.len(),
        stabilizer,
        transversal: if spec.want_transversal {
            words
        } else {
            Vec::new()
        },
        transporter,
        target_found,
    })
}
