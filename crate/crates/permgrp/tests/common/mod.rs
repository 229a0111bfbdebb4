//! Shared fixture: the orthogonal group of a nondegenerate quadratic form
//! of Arf invariant 0 on F2^10, acting on the 1024 bitmask points.
//!
//! The form is the split standard form q(x) = x1·x2 + x3·x4 + … + x9·x10
//! (bits little-endian), with polar form b(x, y) = q(x^y) + q(x) + q(y).
//! For each anisotropic vector a (q(a) = 1) the transvection
//! t_a(x) = x + b(x, a)·a is an involution in the orthogonal group, and the
//! transvections generate the whole group.

use permgrp::{MarkedFamily, Perm, PermGroup};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub const DIM: u32 = 10;
pub const DEGREE: usize = 1 << DIM;

/// Split quadratic form of Arf invariant 0: sum of products of bit pairs.
pub fn q(x: u32) -> u8 {
    let mut v = 0u32;
    for i in 0..DIM / 2 {
        v ^= (x >> (2 * i)) & (x >> (2 * i + 1)) & 1;
    }
    v as u8
}

/// Polar form of `q`.
pub fn bform(x: u32, y: u32) -> u8 {
    q(x ^ y) ^ q(x) ^ q(y)
}

/// All 496 anisotropic bitmasks, ascending.
pub fn anisotropic_masks() -> Vec<u32> {
    (1..DEGREE as u32).filter(|&x| q(x) == 1).collect()
}

/// Transvection attached to an anisotropic vector.
pub fn transvection(a: u32) -> Perm {
    assert_eq!(q(a), 1, "transvections need an anisotropic axis");
    let img: Vec<u32> = (0..DEGREE as u32)
        .map(|x| if bform(x, a) == 1 { x ^ a } else { x })
        .collect();
    Perm::from_images(img).expect("transvection is an involution")
}

/// Form value at every point, used as an orbit-refining labeling.
pub fn labels() -> Vec<u8> {
    (0..DEGREE as u32).map(q).collect()
}

/// Conjugation-stable marking of each anisotropic point with its
/// transvection.
pub fn transvection_family() -> MarkedFamily {
    let members = anisotropic_masks()
        .into_iter()
        .map(|a| (a, transvection(a)))
        .collect();
    MarkedFamily::new(DEGREE as u32, members).expect("distinct axes")
}

/// Deterministically seeded sample of transvections; enough of them
/// generate the full orthogonal group.
pub fn sample_transvections(count: usize, seed: u64) -> Vec<Perm> {
    let masks = anisotropic_masks();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| transvection(*masks.choose(&mut rng).expect("nonempty")))
        .collect()
}

/// The full orthogonal group, built from a seeded transvection sample with
/// a preferred base prefix.
pub fn orthogonal_group(base_hint: &[u32]) -> PermGroup {
    PermGroup::with_base_hint(sample_transvections(16, 0x51ab_c4a1), DEGREE, base_hint)
        .expect("valid generators")
}

/// The group order 2^21 · 3^5 · 5^2 · 7 · 17 · 31.
pub fn orthogonal_order() -> u64 {
    let factored: u64 =
        2u64.pow(21) * 3u64.pow(5) * 5u64.pow(2) * 7 * 17 * 31;
    assert_eq!(factored, 46_998_591_897_600);
    factored
}
