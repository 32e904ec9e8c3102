use std::collections::BTreeMap;

use num_bigint::BigInt;
use quadric_moduli::algebra::{BiForm, Field, PrimeField};
use quadric_moduli::betti::poincare_moduli;
use quadric_moduli::locus::{
    classify_plane, enumerate_planes, moduli_point_count, moduli_point_count_with, raw_expected, raw_oracle_count,
    sweep, Complement, Fiber, Plane, PlaneType, SweepMode, SweepOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn type_name(t: &PlaneType) -> &'static str {
    match t {
        PlaneType::Generic { .. } => "generic",
        PlaneType::SharedRight { .. } => "shared_right",
        PlaneType::SharedLeft { .. } => "shared_left",
    }
}

#[test]
fn plane_type_partition() {
    for p in [2u32, 3, 5, 7] {
        let mut counts = BTreeMap::new();
        let mut total = 0u64;
        for pl in enumerate_planes(p).unwrap() {
            *counts.entry(type_name(&classify_plane(&pl))).or_insert(0u64) += 1;
            total += 1;
        }
        let p64 = p as u64;
        assert_eq!(total, (p64 * p64 + 1) * (p64 * p64 + p64 + 1));
        assert_eq!(counts["shared_right"], p64 + 1, "p = {p}");
        assert_eq!(counts["shared_left"], p64 + 1, "p = {p}");
        assert_eq!(counts["generic"], total - 2 * (p64 + 1));
    }
}

#[test]
fn shared_planes_are_the_expected_families() {
    let k = PrimeField::new(3).unwrap();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for pl in enumerate_planes(3).unwrap() {
        match classify_plane(&pl) {
            PlaneType::SharedRight { v } => right.push(v),
            PlaneType::SharedLeft { v } => left.push(v),
            PlaneType::Generic { .. } => {}
        }
    }
    right.sort();
    left.sort();
    // One plane per point of P^1(F_3), each labelled by its normalized point.
    let points = vec![[0, 1], [1, 0], [1, 1], [1, 2]];
    assert_eq!(right, points);
    assert_eq!(left, points);
    // V1* ⊗ (z + 2w) is recognized from an arbitrary basis.
    let a = BiForm::parse(k, "x*z + 2*x*w + y*z + 2*y*w").unwrap();
    let b = BiForm::parse(k, "2*y*z + y*w").unwrap();
    let pl = Plane::from_basis(&a, &b).unwrap();
    assert_eq!(classify_plane(&pl), PlaneType::SharedRight { v: [1, 2] });
}

#[test]
fn fiber_counts_depend_only_on_type() {
    for p in [2u32, 3] {
        let run = sweep(
            p,
            &SweepOptions {
                mode: SweepMode::Exhaustive,
                ..Default::default()
            },
        )
        .unwrap();
        for r in &run.fibers {
            let expected = match r.plane_type {
                PlaneType::Generic { .. } => 0,
                PlaneType::SharedRight { .. } => 1,
                PlaneType::SharedLeft { .. } => p as u64 + 1,
            };
            assert_eq!(r.detzero_count, expected, "p = {p}, plane {}", r.plane);
        }
        assert!(run.summary.ok, "{:?}", run.summary);
    }
}

#[test]
fn generic_subtypes_are_all_recorded() {
    let run = sweep(3, &SweepOptions::default()).unwrap();
    let mut seen = [false; 3];
    for r in &run.fibers {
        if let PlaneType::Generic { rank1_lines } = r.plane_type {
            seen[rank1_lines as usize] = true;
        }
    }
    assert_eq!(seen, [true, true, true]);
}

#[test]
fn raw_oracle_identity_all_planes_at_two() {
    for pl in enumerate_planes(2).unwrap() {
        let n = Fiber::over_plane(&pl, Complement::default()).unwrap().detzero_count();
        let raw = raw_oracle_count(&pl).unwrap();
        assert_eq!(raw, 4 + 4 * n);
        assert_eq!(raw, raw_expected(2, n));
    }
}

#[test]
fn raw_oracle_identity_one_plane_per_type_at_three() {
    let mut done = BTreeMap::new();
    for pl in enumerate_planes(3).unwrap() {
        let name = type_name(&classify_plane(&pl));
        if done.contains_key(name) {
            continue;
        }
        let n = Fiber::over_plane(&pl, Complement::default()).unwrap().detzero_count();
        let raw = raw_oracle_count(&pl).unwrap();
        assert_eq!(raw, 9 + 18 * n, "{name}");
        done.insert(name, raw);
    }
    assert_eq!(done.len(), 3);
    assert_eq!(done["generic"], 9);
    assert_eq!(done["shared_right"], 27);
    assert_eq!(done["shared_left"], 81);
}

/// Random invertible 2x2 change of basis applied to a plane's basis.
fn scrambled_basis(pl: &Plane, rng: &mut impl Rng) -> [BiForm<PrimeField>; 2] {
    let k = pl.field();
    let p = k.modulus();
    let [b1, b2] = pl.basis();
    loop {
        let g: [u32; 4] = std::array::from_fn(|_| rng.gen_range(0..p));
        if k.sub(&k.mul(&g[0], &g[3]), &k.mul(&g[1], &g[2])) == 0 {
            continue;
        }
        let c1 = b1.scale(&g[0]).add(&b2.scale(&g[1])).unwrap();
        let c2 = b1.scale(&g[2]).add(&b2.scale(&g[3])).unwrap();
        return [c1, c2];
    }
}

#[test]
fn gauge_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut complements_differ = false;
    for p in [2u32, 3] {
        for pl in enumerate_planes(p).unwrap() {
            let lead = Fiber::over_plane(&pl, Complement::LeadingPivots).unwrap();
            let trail = Fiber::over_plane(&pl, Complement::TrailingPivots).unwrap();
            complements_differ |= lead.complement_coords() != trail.complement_coords();
            let n = lead.detzero_count();
            assert_eq!(trail.detzero_count(), n);
            let [c1, c2] = scrambled_basis(&pl, &mut rng);
            for complement in [Complement::LeadingPivots, Complement::TrailingPivots] {
                let scrambled = Fiber::new(&c1, &c2, complement).unwrap();
                assert_eq!(scrambled.detzero_count(), n);
            }
        }
    }
    assert!(complements_differ);
}

#[test]
fn linear_route_agrees_with_enumeration_at_three() {
    for pl in enumerate_planes(3).unwrap() {
        let f = Fiber::over_plane(&pl, Complement::default()).unwrap();
        assert_eq!(f.detzero_count(), f.detzero_count_linear());
    }
}

#[test]
fn cross_route_point_counts() {
    let poincare = poincare_moduli();
    for p in [2u32, 3, 5] {
        assert_eq!(moduli_point_count(p).unwrap(), poincare.eval_at(p as i64), "p = {p}");
    }
    assert_eq!(moduli_point_count(2).unwrap(), BigInt::from(58311));
    assert_eq!(moduli_point_count(3).unwrap(), BigInt::from(5520988));
}

#[test]
fn linear_sweep_at_seven() {
    let run = sweep(7, &SweepOptions::default()).unwrap();
    assert_eq!(run.summary.mode, SweepMode::Linear);
    assert_eq!(run.summary.x_count, 8 + 64);
    assert!(run.summary.ok);
}

#[test]
#[ignore = "full p = 5 sweep, ~2e9 determinant evaluations; run with --ignored in release"]
fn exhaustive_sweep_at_five() {
    let opts = SweepOptions {
        mode: SweepMode::Exhaustive,
        ..Default::default()
    };
    let run = sweep(5, &opts).unwrap();
    assert_eq!(run.summary.x_count, 6 + 36);
    assert!(run.summary.ok);
    assert_eq!(moduli_point_count_with(5, &opts).unwrap(), poincare_moduli().eval_at(5));
}
