//! Conjugation-invariant subgroup fingerprints.
//!
//! Used to refute conjugacy cheaply; equality of fingerprints never proves
//! conjugacy. All ingredients are invariant under conjugation by any
//! ambient element that preserves the point labeling (labels are typically
//! the quadratic-form values of the domain points, which the ambient group
//! preserves).
//!
//! Optional ingredients (exact element-order histogram, derived-subgroup
//! order, full subgroup survey) are only computed below fixed size
//! thresholds and only compared when present on both sides.

use crate::chain::PermGroup;
use crate::error::PermResult;
use crate::orbit::orbit_partition;
use crate::perm::Perm;
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap, HashSet};

/// Orders up to which elements are enumerated for the order histogram and
/// derived subgroup.
pub const ELEMENT_ENUM_LIMIT: usize = 10_000;
/// Strict order bound below which the full subgroup survey is attempted.
pub const SURVEY_ORDER_LIMIT: usize = 1_000;

#[derive(Clone, Debug)]
pub struct FingerprintOptions {
    /// Abort the subgroup survey beyond this many distinct subgroups.
    pub survey_max_subgroups: usize,
    /// Abort the subgroup survey beyond this many elementary operations.
    pub survey_op_budget: u64,
}

impl Default for FingerprintOptions {
    fn default() -> Self {
        FingerprintOptions {
            survey_max_subgroups: 20_000,
            survey_op_budget: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFingerprint {
    pub order: BigInt,
    /// Sorted multiset of orbit profiles: (orbit size, sorted label counts).
    pub orbit_profile: Vec<(usize, Vec<(u8, usize)>)>,
    /// Exact element-order histogram (order ↦ count), when enumerable.
    pub element_orders: Option<Vec<(BigInt, usize)>>,
    /// Order of the derived subgroup, when enumerable.
    pub derived_order: Option<BigInt>,
    /// Multiset of (subgroup order, sorted orbit sizes) over all subgroups,
    /// when the group is small enough and the survey stays within budget.
    pub subgroup_survey: Option<Vec<((usize, Vec<usize>), usize)>>,
}

impl SubgroupFingerprint {
    /// True when the fingerprints prove the groups non-conjugate.
    pub fn refutes(&self, other: &SubgroupFingerprint) -> bool {
        if self.order != other.order || self.orbit_profile != other.orbit_profile {
            return true;
        }
        if let (Some(a), Some(b)) = (&self.element_orders, &other.element_orders) {
            if a != b {
                return true;
            }
        }
        if let (Some(a), Some(b)) = (&self.derived_order, &other.derived_order) {
            if a != b {
                return true;
            }
        }
        if let (Some(a), Some(b)) = (&self.subgroup_survey, &other.subgroup_survey) {
            if a != b {
                return true;
            }
        }
        false
    }
}

fn orbit_profile(h: &PermGroup, labels: Option<&[u8]>) -> Vec<(usize, Vec<(u8, usize)>)> {
    let part = orbit_partition(h.degree(), h.generators());
    let mut profile: Vec<(usize, Vec<(u8, usize)>)> = part
        .orbits
        .iter()
        .map(|orbit| {
            let mut counts: BTreeMap<u8, usize> = BTreeMap::new();
            for &p in orbit {
                let l = labels.map_or(0, |ls| ls[p as usize]);
                *counts.entry(l).or_insert(0) += 1;
            }
            (orbit.len(), counts.into_iter().collect())
        })
        .collect();
    profile.sort();
    profile
}

fn element_order_histogram(elems: &[Perm]) -> Vec<(BigInt, usize)> {
    let mut hist: BTreeMap<BigInt, usize> = BTreeMap::new();
    for e in elems {
        *hist.entry(e.order()).or_insert(0) += 1;
    }
    hist.into_iter().collect()
}

/// Derived subgroup as the normal closure of generator commutators.
fn derived_subgroup(h: &PermGroup) -> PermResult<PermGroup> {
    let mut d = PermGroup::trivial(h.degree());
    let mut queue: Vec<Perm> = Vec::new();
    for (i, a) in h.generators().iter().enumerate() {
        for b in h.generators().iter().skip(i + 1) {
            queue.push(a.commutator(b));
        }
    }
    while let Some(c) = queue.pop() {
        if c.is_identity() || d.contains(&c) {
            continue;
        }
        for g in h.generators() {
            queue.push(c.conj(g));
        }
        d.add_generator(c)?;
    }
    Ok(d)
}

/// All subgroups by join-closure of the cyclic subgroups, with orders and
/// orbit sizes; `None` when a budget trips.
fn subgroup_survey(
    h: &PermGroup,
    elems: &[Perm],
    opts: &FingerprintOptions,
) -> Option<Vec<((usize, Vec<usize>), usize)>> {
    let n = elems.len();
    let mut ops: u64 = 0;
    let index: HashMap<&[u32], usize> =
        elems.iter().enumerate().map(|(i, e)| (e.images(), i)).collect();
    // Multiplication table over element indices.
    let mut mult = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = elems[i].then(&elems[j]);
            mult[i * n + j] = *index.get(prod.images()).expect("closed") as u16;
        }
        ops += n as u64;
        if ops > opts.survey_op_budget {
            return None;
        }
    }
    let words = n.div_ceil(64);
    let id_idx = elems.iter().position(Perm::is_identity).expect("identity present");
    let set_bit = |bits: &mut Vec<u64>, i: usize| bits[i / 64] |= 1 << (i % 64);
    let get_bit = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
    // Closure of a bitset under the multiplication table.
    let close = |seed: Vec<u64>, ops: &mut u64| -> Option<Vec<u64>> {
        let mut bits = seed;
        let mut members: Vec<usize> =
            (0..n).filter(|&i| get_bit(&bits, i)).collect();
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for idx in 0..members.len() {
                let y = members[idx];
                for z in [mult[x * n + y] as usize, mult[y * n + x] as usize] {
                    *ops += 1;
                    if !get_bit(&bits, z) {
                        set_bit(&mut bits, z);
                        members.push(z);
                    }
                }
            }
            if *ops > opts.survey_op_budget {
                return None;
            }
        }
        Some(bits)
    };
    // Seed: all cyclic subgroups, with a generating element each.
    let mut subs: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let mut bits = vec![0u64; words];
        set_bit(&mut bits, id_idx);
        let mut x = i;
        loop {
            set_bit(&mut bits, x);
            x = mult[x * n + i] as usize;
            ops += 1;
            if x == i {
                break;
            }
        }
        if seen.insert(bits.clone()) {
            queue.push((bits, vec![i]));
        }
    }
    while let Some((bits, gens)) = queue.pop() {
        for (other_bits, other_gens) in subs.iter() {
            let mut seed: Vec<u64> =
                bits.iter().zip(other_bits).map(|(a, b)| a | b).collect();
            if seed == *other_bits || seed == bits {
                continue;
            }
            seed = close(seed, &mut ops)?;
            if seen.insert(seed.clone()) {
                let mut g = gens.clone();
                g.extend_from_slice(other_gens);
                queue.push((seed, g));
            }
            if seen.len() > opts.survey_max_subgroups {
                return None;
            }
        }
        subs.push((bits, gens));
    }
    // Profile each subgroup by (order, sorted orbit sizes).
    let mut survey: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for (bits, gens) in &subs {
        let order: usize = bits.iter().map(|w| w.count_ones() as usize).sum();
        let gen_perms: Vec<Perm> = gens.iter().map(|&i| elems[i].clone()).collect();
        let sizes = orbit_partition(h.degree(), &gen_perms).sorted_sizes();
        *survey.entry((order, sizes)).or_insert(0) += 1;
    }
    Some(survey.into_iter().collect())
}

/// Compute the fingerprint of a subgroup, refining orbits by an optional
/// point labeling.
pub fn fingerprint(
    h: &PermGroup,
    labels: Option<&[u8]>,
    opts: &FingerprintOptions,
) -> PermResult<SubgroupFingerprint> {
    let order = h.order();
    let profile = orbit_profile(h, labels);
    let (mut element_orders, mut derived_order, mut survey) = (None, None, None);
    if order <= BigInt::from(ELEMENT_ENUM_LIMIT) {
        let elems = h.elements(ELEMENT_ENUM_LIMIT)?;
        element_orders = Some(element_order_histogram(&elems));
        derived_order = Some(derived_subgroup(h)?.order());
        if order < BigInt::from(SURVEY_ORDER_LIMIT) {
            survey = subgroup_survey(h, &elems, opts);
        }
    }
    Ok(SubgroupFingerprint {
        order,
        orbit_profile: profile,
        element_orders,
        derived_order,
        subgroup_survey: survey,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(img: &[u32]) -> Perm {
        Perm::from_images(img.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_subgroups_share_fingerprints() {
        let h1 = PermGroup::from_generators(vec![p(&[1, 2, 0, 3, 4, 5])], 6).unwrap();
        let conj = p(&[3, 4, 5, 0, 1, 2]);
        let h2 = PermGroup::from_generators(
            h1.generators().iter().map(|x| x.conj(&conj)).collect(),
            6,
        )
        .unwrap();
        let opts = FingerprintOptions::default();
        let f1 = fingerprint(&h1, None, &opts).unwrap();
        let f2 = fingerprint(&h2, None, &opts).unwrap();
        assert!(!f1.refutes(&f2));
        assert_eq!(f1.element_orders, f2.element_orders);
        assert_eq!(f1.subgroup_survey, f2.subgroup_survey);
    }

    #[test]
    fn order_refutes() {
        let h1 = PermGroup::from_generators(vec![p(&[1, 2, 0, 3])], 4).unwrap();
        let h2 = PermGroup::from_generators(vec![p(&[1, 0, 2, 3])], 4).unwrap();
        let opts = FingerprintOptions::default();
        let f1 = fingerprint(&h1, None, &opts).unwrap();
        let f2 = fingerprint(&h2, None, &opts).unwrap();
        assert!(f1.refutes(&f2));
    }

    #[test]
    fn labels_refine_orbits() {
        // Two groups with the same orbit sizes, separated only by labels.
        let h1 = PermGroup::from_generators(vec![p(&[1, 0, 2, 3])], 4).unwrap();
        let h2 = PermGroup::from_generators(vec![p(&[0, 1, 3, 2])], 4).unwrap();
        let labels = [0u8, 0, 1, 1];
        let opts = FingerprintOptions::default();
        let f1 = fingerprint(&h1, Some(&labels), &opts).unwrap();
        let f2 = fingerprint(&h2, Some(&labels), &opts).unwrap();
        assert!(f1.refutes(&f2));
        let f1u = fingerprint(&h1, None, &opts).unwrap();
        let f2u = fingerprint(&h2, None, &opts).unwrap();
        assert_eq!(f1u.orbit_profile, f2u.orbit_profile);
    }

    #[test]
    fn symmetric_group_survey_counts() {
        // S3 acting on 3 points has 6 subgroups: 1, three of order 2, one of
        // order 3, and itself.
        let h = PermGroup::from_generators(vec![p(&[1, 0, 2]), p(&[1, 2, 0])], 3).unwrap();
        let f = fingerprint(&h, None, &FingerprintOptions::default()).unwrap();
        let survey = f.subgroup_survey.expect("small group surveyed");
        let total: usize = survey.iter().map(|(_, c)| c).sum();
        assert_eq!(total, 6);
        assert_eq!(f.derived_order, Some(BigInt::from(3)));
        let orders: Vec<(BigInt, usize)> = f.element_orders.unwrap();
        assert_eq!(
            orders,
            vec![
                (BigInt::from(1), 1),
                (BigInt::from(2), 3),
                (BigInt::from(3), 2)
            ]
        );
    }

    #[test]
    fn alternating_group_derived_series_step() {
        // A4: derived subgroup is the Klein four-group.
        let h = PermGroup::from_generators(vec![p(&[1, 2, 0, 3]), p(&[0, 2, 3, 1])], 4).unwrap();
        assert_eq!(h.order(), BigInt::from(12));
        let f = fingerprint(&h, None, &FingerprintOptions::default()).unwrap();
        assert_eq!(f.derived_order, Some(BigInt::from(4)));
        // A4 has 10 subgroups.
        let survey = f.subgroup_survey.expect("surveyed");
        let total: usize = survey.iter().map(|(_, c)| c).sum();
        assert_eq!(total, 10);
    }
}
