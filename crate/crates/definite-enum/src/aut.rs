//! Automorphism groups and equivalence of definite forms.
//!
//! Both problems are solved by a backtrack over images of a fixed basis
//! chosen inside a characteristic vector set V (all vectors of the first
//! few norms, enough to span). Candidates are filtered by norm and by the
//! multiset of inner products against V (a rigid fingerprint), and pairwise
//! inner products with already-chosen images must match exactly. Accepted
//! leaves are verified: the interpolating matrix must be integral,
//! unimodular, and transform the Gram matrix correctly.
//!
//! Pruning follows the orbit-minimum scheme: at depth i the candidate image
//! is restricted to the minimum of its orbit under the pointwise stabilizer
//! (within the already-known automorphism group) of the previously chosen
//! images. Any undiscovered automorphism can be multiplied by a known one
//! to reach such a minimum, so exhausting the pruned tree is a proof of
//! completeness.

use crate::enumerate::enumerate_fixed_norm;
use crate::error::{EnumError, EnumResult};
use crate::form::DefiniteForm;
use exact_core::mat::{det_int, rank_field, row_mul};
use exact_core::{to_integral, to_rational, IMat, IVec, QMat};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use permgrp::{orbit_partition, Perm, PermGroup};
use std::collections::HashMap;

const NODE_BUDGET: u64 = 20_000_000;

/// The automorphism group O(F) of a definite form.
#[derive(Clone, Debug)]
pub struct AutGroup {
    /// Matrix generators, each satisfying P·F·Pᵀ = F.
    pub mat_gens: Vec<IMat>,
    /// Exact group order.
    pub order: BigInt,
    /// The invariant vector set the group was computed on.
    pub vectors: Vec<IVec>,
    /// The group acting on `vectors` by index.
    pub perm_group: PermGroup,
}

/// All vectors of the smallest norms, until they span the space. Returns
/// the vectors (grouped by norm, lexicographic within) and the norms used.
fn characteristic_set(f: &DefiniteForm) -> EnumResult<(Vec<IVec>, Vec<BigInt>)> {
    let n = f.rank();
    let max_diag = (0..n)
        .map(|i| f.gram().at(i, i).clone())
        .max()
        .expect("nonempty");
    let mut vectors: Vec<IVec> = Vec::new();
    let mut norms = Vec::new();
    let mut beta = BigInt::one();
    while beta <= max_diag {
        let layer = enumerate_fixed_norm(f, &beta, false)?;
        if !layer.is_empty() {
            vectors.extend(layer);
            norms.push(beta.clone());
            if span_rank(&vectors) == n {
                return Ok((vectors, norms));
            }
        }
        beta += 1;
    }
    // The unit vectors have norms ≤ max_diag, so this is unreachable for a
    // valid definite form.
    unreachable!("vectors of norm up to the diagonal maximum span the space")
}

fn span_rank(vectors: &[IVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = IMat::from_rows(vectors.to_vec());
    rank_field(&to_rational(&m))
}

/// Indices of the first linearly independent spanning subset of `vectors`.
fn pick_basis(vectors: &[IVec], n: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, _) in vectors.iter().enumerate() {
        let mut trial: Vec<IVec> = chosen.iter().map(|&j| vectors[j].clone()).collect();
        trial.push(vectors[i].clone());
        if span_rank(&trial) == trial.len() {
            chosen.push(i);
            if chosen.len() == n {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), n, "characteristic set spans");
    chosen
}

/// products[i][j] = v_i · F · v_j over the whole vector set.
fn product_table(f: &DefiniteForm, vectors: &[IVec]) -> Vec<Vec<BigInt>> {
    let with_gram: Vec<IVec> = vectors.iter().map(|v| row_mul(v, f.gram())).collect();
    with_gram
        .iter()
        .map(|gv| vectors.iter().map(|w| exact_core::mat::dot(gv, w)).collect())
        .collect()
}

/// Fingerprint of vector i: (norm, sorted multiset of products with V).
fn fingerprints(products: &[Vec<BigInt>]) -> Vec<(BigInt, Vec<BigInt>)> {
    products
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut sorted = row.clone();
            sorted.sort();
            (row[i].clone(), sorted)
        })
        .collect()
}

struct SearchCtx<'a> {
    f1: &'a DefiniteForm,
    f2: &'a DefiniteForm,
    v2: &'a [IVec],
    prod1: &'a [Vec<BigInt>],
    prod2: &'a [Vec<BigInt>],
    /// Candidate target indices per basis position (fingerprint-matched).
    cands: &'a [Vec<u32>],
    basis: &'a [usize],
    b_inv: &'a QMat,
    /// Index lookup for building the permutation action on v2 (aut mode).
    v2_index: &'a HashMap<IVec, u32>,
    /// Aut mode: skip leaves lying in this group.
    skip_known: Option<&'a PermGroup>,
    nodes: u64,
}

impl<'a> SearchCtx<'a> {
    fn leaf(&self, chosen: &[u32]) -> Option<(IMat, Option<Perm>)> {
        let rows: Vec<IVec> = chosen
            .iter()
            .map(|&m| self.v2[m as usize].clone())
            .collect();
        let m_mat = IMat::from_rows(rows);
        let p_rat = self.b_inv.mul(&to_rational(&m_mat));
        let p = to_integral(&p_rat)?;
        if det_int(&p).abs() != BigInt::one() {
            return None;
        }
        // P·F2·Pᵀ = F1, verified entry by entry.
        let pf = p.mul(self.f2.gram());
        let pfp = pf.mul(&p.transpose());
        if pfp != *self.f1.gram() {
            return None;
        }
        let perm = if self.skip_known.is_some() {
            let img: Option<Vec<u32>> = self
                .v2
                .iter()
                .map(|v| self.v2_index.get(&row_mul(v, &p)).copied())
                .collect();
            let perm = Perm::from_images(img?).ok()?;
            if self.skip_known.map(|k| k.contains(&perm)) == Some(true) {
                return None;
            }
            Some(perm)
        } else {
            None
        };
        Some((p, perm))
    }

    fn dfs(
        &mut self,
        i: usize,
        chosen: &mut Vec<u32>,
        stab: &PermGroup,
    ) -> EnumResult<Option<(IMat, Option<Perm>)>> {
        if i == self.basis.len() {
            return Ok(self.leaf(chosen));
        }
        let bi = self.basis[i];
        let stab_mins: Option<Vec<u32>> = if stab.order() > BigInt::one() {
            let part = orbit_partition(self.v2.len(), stab.generators());
            Some(
                (0..self.v2.len())
                    .map(|p| part.orbits[part.id[p]][0])
                    .collect(),
            )
        } else {
            None
        };
        for &m in &self.cands[i] {
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return Err(EnumError::Budget(format!(
                    "isometry backtrack exceeded {NODE_BUDGET} nodes"
                )));
            }
            if chosen.contains(&m) {
                continue;
            }
            if let Some(mins) = &stab_mins {
                if mins[m as usize] != m {
                    continue;
                }
            }
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(j, &mj)| {
                    self.prod2[m as usize][mj as usize] == self.prod1[bi][self.basis[j]]
                });
            if !ok {
                continue;
            }
            chosen.push(m);
            let deeper = stab.point_stabilizer(m)?;
            let res = self.dfs(i + 1, chosen, &deeper)?;
            chosen.pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }
}

fn matched_candidates(
    fp1: &[(BigInt, Vec<BigInt>)],
    fp2: &[(BigInt, Vec<BigInt>)],
    basis: &[usize],
) -> Vec<Vec<u32>> {
    let mut index: HashMap<&(BigInt, Vec<BigInt>), Vec<u32>> = HashMap::new();
    for (m, fp) in fp2.iter().enumerate() {
        index.entry(fp).or_default().push(m as u32);
    }
    basis
        .iter()
        .map(|&b| index.get(&fp1[b]).cloned().unwrap_or_default())
        .collect()
}

fn basis_inverse(vectors: &[IVec], basis: &[usize]) -> QMat {
    let rows: Vec<IVec> = basis.iter().map(|&i| vectors[i].clone()).collect();
    let b = IMat::from_rows(rows);
    exact_core::mat::inverse_field(&to_rational(&b)).expect("basis is invertible")
}

/// Generators and exact order of the automorphism group of `f`.
pub fn definite_aut(f: &DefiniteForm) -> EnumResult<AutGroup> {
    let (vectors, _) = characteristic_set(f)?;
    let products = product_table(f, &vectors);
    let fps = fingerprints(&products);
    let basis = pick_basis(&vectors, f.rank());
    let b_inv = basis_inverse(&vectors, &basis);
    let cands = matched_candidates(&fps, &fps, &basis);
    let v2_index: HashMap<IVec, u32> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i as u32))
        .collect();
    let mut known = PermGroup::trivial(vectors.len());
    let mut mat_gens: Vec<IMat> = Vec::new();
    loop {
        let found = {
            let mut ctx = SearchCtx {
                f1: f,
                f2: f,
                v2: &vectors,
                prod1: &products,
                prod2: &products,
                cands: &cands,
                basis: &basis,
                b_inv: &b_inv,
                v2_index: &v2_index,
                skip_known: Some(&known),
                nodes: 0,
            };
            ctx.dfs(0, &mut Vec::new(), &known)?
        };
        match found {
            Some((p, Some(perm))) => {
                known.add_generator(perm)?;
                mat_gens.push(p);
            }
            Some((_, None)) => unreachable!("aut mode always builds the permutation"),
            None => break,
        }
    }
    Ok(AutGroup {
        mat_gens,
        order: known.order(),
        vectors,
        perm_group: known,
    })
}

/// A unimodular P with P·F2·Pᵀ = F1, or `None` when the forms are not
/// equivalent. `None` is a proof: the pruned search is exhaustive.
pub fn definite_equiv(f1: &DefiniteForm, f2: &DefiniteForm) -> EnumResult<Option<IMat>> {
    if f1.rank() != f2.rank() {
        return Ok(None);
    }
    if det_int(f1.gram()) != det_int(f2.gram()) {
        return Ok(None);
    }
    let (v1, norms1) = characteristic_set(f1)?;
    // Collect F2 vectors at exactly the same norms; count mismatch refutes.
    let mut v2: Vec<IVec> = Vec::new();
    for beta in &norms1 {
        let layer = enumerate_fixed_norm(f2, beta, false)?;
        v2.extend(layer);
    }
    {
        let count = |vs: &[IVec], f: &DefiniteForm, b: &BigInt| {
            vs.iter().filter(|v| f.norm(v) == *b).count()
        };
        for beta in &norms1 {
            if count(&v1, f1, beta) != count(&v2, f2, beta) {
                return Ok(None);
            }
        }
    }
    if v1.len() != v2.len() || span_rank(&v2) != f2.rank() {
        return Ok(None);
    }
    let prod1 = product_table(f1, &v1);
    let prod2 = product_table(f2, &v2);
    let fp1 = fingerprints(&prod1);
    let fp2 = fingerprints(&prod2);
    {
        let mut s1 = fp1.clone();
        let mut s2 = fp2.clone();
        s1.sort();
        s2.sort();
        if s1 != s2 {
            return Ok(None);
        }
    }
    let basis = pick_basis(&v1, f1.rank());
    let b_inv = basis_inverse(&v1, &basis);
    let cands = matched_candidates(&fp1, &fp2, &basis);
    let v2_index: HashMap<IVec, u32> = v2
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i as u32))
        .collect();
    // Witnesses form a single right coset of Aut(F2) acting on images, so
    // pruning by Aut(F2) stabilizers keeps completeness.
    let aut2 = definite_aut(f2)?;
    let mut ctx = SearchCtx {
        f1,
        f2,
        v2: &v2,
        prod1: &prod1,
        prod2: &prod2,
        cands: &cands,
        basis: &basis,
        b_inv: &b_inv,
        v2_index: &v2_index,
        skip_known: None,
        nodes: 0,
    };
    let res = ctx.dfs(0, &mut Vec::new(), &aut2.perm_group)?;
    Ok(res.map(|(p, _)| p))
}
