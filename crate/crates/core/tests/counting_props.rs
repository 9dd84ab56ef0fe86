use num_bigint::{BigInt, BigUint};

use abelian_algebra::counting::{
    distinguishing_cyclic, element_order_profile, hom_count, isomorphic_by_element_orders, Counter,
};
use abelian_algebra::group::{types_of_order, types_up_to, GroupType};
use abelian_algebra::lattice::lattice_summary;
use abelian_algebra::oracle::classical_totient;
use abelian_algebra::Algebra;

#[test]
fn hom_counts_are_symmetric() {
    let types = types_up_to(64);
    for a in &types {
        for b in &types {
            assert_eq!(hom_count(a, b), hom_count(b, a), "{a}, {b}");
        }
    }
}

#[test]
fn homs_split_by_kernel() {
    let counter = Counter::default();
    for a in types_up_to(36) {
        let summary = lattice_summary(&a, 64).unwrap();
        for b in types_up_to(16) {
            let mut total = BigUint::from(0u32);
            for e in &summary.entries {
                total += counter.mono_count(&e.quotient, &b).unwrap() * BigUint::from(e.count);
            }
            assert_eq!(total, hom_count(&a, &b), "{a} -> {b}");
        }
    }
}

#[test]
fn epis_and_monos_are_dual() {
    // an epimorphism A -> B corresponds to a kernel with quotient B and an iso
    let counter = Counter::default();
    for a in types_up_to(32) {
        for b in types_up_to(32) {
            let quotient_count: u64 = lattice_summary(&a, 64)
                .unwrap()
                .entries
                .iter()
                .filter(|e| e.quotient == b)
                .map(|e| e.count)
                .sum();
            let expected = counter.aut_count(&b).unwrap() * BigUint::from(quotient_count);
            assert_eq!(counter.epi_count(&a, &b).unwrap(), expected, "{a} ->> {b}");
        }
    }
}

#[test]
fn cyclic_automorphisms_are_units() {
    let counter = Counter::default();
    for n in 1..=200 {
        assert_eq!(counter.aut_count(&GroupType::cyclic(n)).unwrap(), BigUint::from(classical_totient(n)));
    }
}

#[test]
fn subgroup_profile_totals_match_nsub() {
    let counter = Counter::default();
    let nsub = Algebra::default().subgroup_count();
    for a in types_up_to(64) {
        let profile = counter.subgroup_order_profile(&a).unwrap();
        assert_eq!(BigInt::from(profile.total()), *nsub.eval(&a).unwrap().numer(), "{a}");
        let by_type: BigUint = types_up_to(a.order())
            .iter()
            .map(|b| counter.sub_count(b, &a).unwrap())
            .sum();
        assert_eq!(by_type, BigUint::from(profile.total()), "{a}");
    }
}

#[test]
fn cyclic_homs_separate_types() {
    for n in 1..=64 {
        let types = types_of_order(n);
        for (i, a) in types.iter().enumerate() {
            for b in &types[i + 1..] {
                let d = distinguishing_cyclic(a, b, 64);
                assert!(d.is_some(), "{a} and {b} agree on all Z_d, d <= 64");
                assert_eq!(n % d.unwrap(), 0, "{a}, {b}");
            }
        }
    }
}

#[test]
fn cancellation_via_products() {
    // A x C and B x C share hom counts into every Z_d only if A = B
    let c = GroupType::cyclic(4);
    for n in [8u64, 16, 12, 36] {
        let types = types_of_order(n);
        for a in &types {
            for b in &types {
                let same = distinguishing_cyclic(&a.product(&c), &b.product(&c), 256).is_none();
                assert_eq!(same, a == b, "{a}, {b}");
            }
        }
    }
}

#[test]
fn element_profiles_are_complete_invariants() {
    for n in 1..=128 {
        let types = types_of_order(n);
        for a in &types {
            assert_eq!(element_order_profile(a).total(), n);
            for b in &types {
                assert_eq!(isomorphic_by_element_orders(a, b), a == b);
            }
        }
    }
}
