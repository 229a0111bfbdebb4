//! Integration tests for definite-form enumeration and isometry:
//! the E8 root lattice as a fixed reference with known layer counts and
//! automorphism group order, plus randomized cross-checks against an
//! independent brute-force box enumeration and unimodular conjugation.

use definite_enum::{
    definite_aut, definite_equiv, enumerate_fixed_norm, enumerate_up_to_norm, DefiniteForm,
};
use exact_core::mat::{det_int, inverse_field};
use exact_core::{lattice, to_integral, to_rational, IMat, IVec};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use permgrp::orbit_partition;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

fn e8_form() -> DefiniteForm {
    DefiniteForm::new(lattice::e8().gram).expect("E8 is positive definite")
}

#[test]
fn e8_layer_counts_match_root_system() {
    let f = e8_form();
    assert!(enumerate_fixed_norm(&f, &bi(1), false).unwrap().is_empty());
    assert!(enumerate_fixed_norm(&f, &bi(3), false).unwrap().is_empty());

    let roots = enumerate_fixed_norm(&f, &bi(2), false).unwrap();
    assert_eq!(roots.len(), 240);
    let half = enumerate_fixed_norm(&f, &bi(2), true).unwrap();
    assert_eq!(half.len(), 120);

    let layer4 = enumerate_fixed_norm(&f, &bi(4), false).unwrap();
    assert_eq!(layer4.len(), 2160);

    // Output is strictly sorted (hence duplicate-free) and every vector has
    // the requested norm.
    assert!(roots.windows(2).all(|w| w[0] < w[1]));
    assert!(layer4.windows(2).all(|w| w[0] < w[1]));
    assert!(roots.iter().all(|v| f.norm(v) == bi(2)));
    assert!(layer4.iter().all(|v| f.norm(v) == bi(4)));

    // The cumulative enumeration is exactly the union of the layers.
    let upto = enumerate_up_to_norm(&f, &bi(4), false).unwrap();
    assert_eq!(upto.len(), 240 + 2160);
    let mut merged = [roots, layer4].concat();
    merged.sort();
    assert_eq!(upto, merged);
}

#[test]
fn negative_definite_input_is_negated_once() {
    let neg = lattice::e8().rescale(-1);
    let f = DefiniteForm::new(neg.gram).unwrap();
    assert!(f.was_negated());
    let roots = enumerate_fixed_norm(&f, &bi(2), false).unwrap();
    assert_eq!(roots.len(), 240);
    // Same layer as from the positive form.
    let pos_roots = enumerate_fixed_norm(&e8_form(), &bi(2), false).unwrap();
    assert_eq!(roots, pos_roots);
}

/// Independent oracle: every solution of x·F·xᵀ ≤ max lies in the box
/// |x_i| ≤ √(max·(F⁻¹)_ii), so a direct scan of that box classifies all
/// vectors by norm.
fn box_oracle(f: &DefiniteForm, max: i64) -> BTreeMap<i64, Vec<Vec<i64>>> {
    let n = f.rank();
    let inv = inverse_field(&to_rational(f.gram())).expect("definite form is invertible");
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let r = inv.at(i, i) * num_rational::BigRational::from_integer(BigInt::from(max));
            // floor(√(p/q)) = isqrt(floor(p/q)) for nonnegative rationals.
            let fl = r.floor().to_integer();
            fl.sqrt().to_i64().expect("small box bound")
        })
        .collect();
    let gram: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f.gram().at(i, j).to_i64().expect("small gram entry"))
                .collect()
        })
        .collect();
    let volume: i64 = bounds.iter().map(|b| 2 * b + 1).product();
    assert!(volume <= 3_000_000, "oracle box too large: {volume}");

    let mut by_norm: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let norm: i64 = (0..n)
            .map(|i| (0..n).map(|j| x[i] * gram[i][j] * x[j]).sum::<i64>())
            .sum();
        if norm >= 1 && norm <= max {
            by_norm.entry(norm).or_default().push(x.clone());
        }
        let mut k = 0;
        while k < n {
            if x[k] < bounds[k] {
                x[k] += 1;
                break;
            }
            x[k] = -bounds[k];
            k += 1;
        }
        if k == n {
            break;
        }
    }
    for layer in by_norm.values_mut() {
        layer.sort();
    }
    by_norm
}

fn to_i64_vec(v: &IVec) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

/// A random positive definite form A·Aᵀ whose norm-≤20 solution box is small
/// enough for the oracle.
fn random_definite(rng: &mut ChaCha8Rng, n: usize) -> DefiniteForm {
    loop {
        let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-2..=2)).collect();
        let a = IMat::from_i64(n, n, &entries);
        let g = a.mul(&a.transpose());
        let Ok(f) = DefiniteForm::new(g) else {
            continue;
        };
        let inv = inverse_field(&to_rational(f.gram())).unwrap();
        let twenty = num_rational::BigRational::from_integer(BigInt::from(20));
        let volume: BigInt = (0..n)
            .map(|i| {
                let fl = (inv.at(i, i) * &twenty).floor().to_integer();
                BigInt::from(2) * fl.sqrt() + 1
            })
            .product();
        if volume <= BigInt::from(3_000_000) {
            return f;
        }
    }
}

#[test]
fn enumeration_agrees_with_box_oracle_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0b0e);
    for n in 2..=4 {
        for _ in 0..2 {
            let f = random_definite(&mut rng, n);
            let oracle = box_oracle(&f, 20);
            for beta in 1..=20i64 {
                let got = enumerate_fixed_norm(&f, &bi(beta), false).unwrap();
                let got_i64: Vec<Vec<i64>> = got.iter().map(to_i64_vec).collect();
                let want = oracle.get(&beta).cloned().unwrap_or_default();
                assert_eq!(got_i64, want, "rank {n}, norm {beta}");
            }
            let upto = enumerate_up_to_norm(&f, &bi(20), false).unwrap();
            let total: usize = oracle.values().map(Vec::len).sum();
            assert_eq!(upto.len(), total);
        }
    }
}

#[test]
fn e8_automorphism_group_order_two_ways() {
    let f = e8_form();
    let aut = definite_aut(&f).unwrap();

    // The Weyl group of E8 together with −1: order 696729600.
    assert_eq!(aut.order, bi(696_729_600));

    // Same order via orbit–stabilizer on the 240 roots.
    assert_eq!(aut.vectors.len(), 240);
    let part = orbit_partition(240, aut.perm_group.generators());
    assert_eq!(part.orbits.len(), 1, "transitive on roots");
    let stab = aut.perm_group.point_stabilizer(0).unwrap();
    assert_eq!(stab.order(), bi(2_903_040));
    assert_eq!(bi(240) * stab.order(), aut.order);

    // Every matrix generator is a genuine unimodular isometry.
    assert!(!aut.mat_gens.is_empty());
    for p in &aut.mat_gens {
        assert!(det_int(p).abs().is_one());
        let back = p.mul(f.gram()).mul(&p.transpose());
        assert_eq!(back, *f.gram());
    }
}

/// Random unimodular matrix as a product of elementary shears, swaps and
/// sign flips.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IMat {
    let mut u = IMat::identity(n);
    for _ in 0..8 {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let c = bi(rng.gen_range(-2..=2i64));
                for k in 0..n {
                    let add = &c * u.at(j, k);
                    let v = u.at(i, k) + add;
                    u.set(i, k, v);
                }
            }
            1 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    for k in 0..n {
                        let a = u.at(i, k).clone();
                        let b = u.at(j, k).clone();
                        u.set(i, k, b);
                        u.set(j, k, a);
                    }
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                for k in 0..n {
                    let v = -u.at(i, k).clone();
                    u.set(i, k, v);
                }
            }
        }
    }
    assert!(det_int(&u).abs().is_one());
    u
}

#[test]
fn unimodular_conjugates_are_equivalent_with_verified_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xec_1071);
    for n in 2..=4 {
        let f1 = random_definite(&mut rng, n);
        let u = random_unimodular(&mut rng, n);
        let g2 = u.mul(f1.gram()).mul(&u.transpose());
        let f2 = DefiniteForm::new(g2).unwrap();

        let p = definite_equiv(&f1, &f2)
            .unwrap()
            .expect("conjugate forms are equivalent");
        assert_eq!(p.mul(f2.gram()).mul(&p.transpose()), *f1.gram());
        assert!(det_int(&p).abs().is_one());

        // The inverse witness works in the other direction.
        let q = to_integral(&inverse_field(&to_rational(&p)).unwrap())
            .expect("unimodular inverse is integral");
        assert_eq!(q.mul(f1.gram()).mul(&q.transpose()), *f2.gram());

        // And the search in the other direction also finds one.
        let w = definite_equiv(&f2, &f1).unwrap().expect("symmetric");
        assert_eq!(w.mul(f1.gram()).mul(&w.transpose()), *f2.gram());
    }
}

#[test]
fn nonisometric_forms_with_equal_rank_and_determinant_are_refuted() {
    // x² + 6y² and 2x² + 3y²: both determinant 6, but different minima
    // (1 versus 2), i.e. the two classes of discriminant −24.
    let f1 = DefiniteForm::from_i64(2, &[1, 0, 0, 6]).unwrap();
    let f2 = DefiniteForm::from_i64(2, &[2, 0, 0, 3]).unwrap();
    assert_eq!(det_int(f1.gram()), det_int(f2.gram()));
    assert!(definite_equiv(&f1, &f2).unwrap().is_none());
    assert!(definite_equiv(&f2, &f1).unwrap().is_none());

    let c1 = enumerate_fixed_norm(&f1, &bi(1), false).unwrap().len();
    let c2 = enumerate_fixed_norm(&f2, &bi(1), false).unwrap().len();
    assert_eq!((c1, c2), (2, 0));
}

#[test]
fn zero_norm_request_is_rejected() {
    let f = e8_form();
    assert!(enumerate_fixed_norm(&f, &BigInt::zero(), false).is_err());
    assert!(enumerate_fixed_norm(&f, &bi(-2), false).is_err());
}
