//! Permutations of `{0, …, D−1}` stored as image arrays.
//!
//! Composition is in application order: `a.then(&b)` maps `x` to `b(a(x))`,
//! so a product read left to right is applied left to right. This matches
//! the row-vector right-action convention used throughout the workspace.

use crate::error::{PermError, PermResult};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    img: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { img: (0..degree as u32).collect() }
    }

    /// Validate and wrap an image array.
    pub fn from_images(img: Vec<u32>) -> PermResult<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &v in &img {
            if (v as usize) >= n || seen[v as usize] {
                return Err(PermError::NotPermutation(format!(
                    "image array of length {n} is not a bijection (value {v})"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Perm { img: img.into_boxed_slice() })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.img[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` followed by `other`: maps `x` to `other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            img: self.img.iter().map(|&v| other.img[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.img.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Perm { img: inv.into_boxed_slice() }
    }

    /// Conjugate `g⁻¹ · self · g` (in application order), so that a point
    /// orbit of `self` is carried to its `g`-image.
    pub fn conj(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    /// Commutator `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycle decomposition; fixed points omitted, cycles and their starting
    /// points in increasing order.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.img[start] == start as u32 {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cyc.push(p);
                p = self.img[p as usize];
            }
            out.push(cyc);
        }
        out
    }

    /// Element order: least common multiple of the cycle lengths.
    pub fn order(&self) -> BigInt {
        let mut ord = BigInt::one();
        for c in self.cycles() {
            ord = ord.lcm(&BigInt::from(c.len()));
        }
        ord
    }

    pub fn moved_points(&self) -> Vec<u32> {
        self.img
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i as u32 != v)
            .map(|(i, _)| i as u32)
            .collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Check that a permutation acts XOR-linearly on the bitmask domain
/// `{0, …, 2^k − 1}`: it fixes 0 and its value on any mask is the XOR of its
/// values on the set bits.
pub fn is_xor_linear(p: &Perm) -> bool {
    let n = p.degree();
    if !n.is_power_of_two() || p.apply(0) != 0 {
        return false;
    }
    for x in 1..n as u32 {
        let low = x & x.wrapping_neg(); // lowest set bit
        if x != low && p.apply(x) != p.apply(low) ^ p.apply(x ^ low) ^ p.apply(0) {
            return false;
        }
    }
    true
}

/// If the permutation acts as a translation `x ↦ x ^ a` on every point it
/// moves (and moves at least one point), return the translation vector `a`.
pub fn translation_axis(p: &Perm) -> Option<u32> {
    let mut axis = 0u32;
    for (i, &v) in p.images().iter().enumerate() {
        let d = (i as u32) ^ v;
        if d != 0 {
            if axis == 0 {
                axis = d;
            } else if d != axis {
                return None;
            }
        }
    }
    (axis != 0).then_some(axis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(img: &[u32]) -> Perm {
        Perm::from_images(img.to_vec()).unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        let a = p(&[1, 2, 0, 3]);
        let b = p(&[0, 1, 3, 2]);
        let ab = a.then(&b);
        assert_eq!(ab.images(), &[1, 3, 0, 2]);
        assert!(a.then(&a.inverse()).is_identity());
        assert!(ab.then(&ab.inverse()).is_identity());
    }

    #[test]
    fn validation_rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn order_and_cycles() {
        let a = p(&[1, 0, 3, 4, 2, 5]);
        assert_eq!(a.order(), BigInt::from(6));
        assert_eq!(a.cycles(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(a.pow(6), Perm::identity(6));
        assert_eq!(a.pow(-1), a.inverse());
        assert_eq!(format!("{a:?}"), "(0 1)(2 3 4)");
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let a = p(&[1, 0, 2, 3]);
        let g = p(&[2, 3, 0, 1]);
        let c = a.conj(&g);
        assert_eq!(c.cycles(), vec![vec![2, 3]]);
    }

    #[test]
    fn xor_linearity_detection() {
        // x ↦ x with bits 0 and 1 swapped is linear on masks of size 4.
        let swap = p(&[0, 2, 1, 3]);
        assert!(is_xor_linear(&swap));
        let not_linear = p(&[1, 0, 2, 3]);
        assert!(!is_xor_linear(&not_linear));
        // Translation by 3 on all points.
        let t3 = p(&[3, 2, 1, 0]);
        assert_eq!(translation_axis(&t3), Some(3));
        // Swapping points 1 and 2 also displaces every moved point by 3.
        assert_eq!(translation_axis(&swap), Some(3));
        // Mixed displacements are rejected, as is the identity.
        assert_eq!(translation_axis(&p(&[1, 2, 0, 3])), None);
        assert_eq!(translation_axis(&Perm::identity(4)), None);
    }
}
