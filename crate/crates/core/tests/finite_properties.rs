//! Invariants of the finite-table constructions, checked on random inverse
//! subsemigroups of I(3).

use proptest::prelude::*;

use stonedual::duality::{
    classify_symmetric, comparison_isomorphism, duality_roundtrip, ideal_correspondence, principal_criterion,
    ultrafilter_groupoid,
};
use stonedual::filtercomp::{
    booleanization_report, check_cover_to_join, distributive_completion, is_tight_filter, lenz_congruence,
    tight_filters, ultrafilters,
};
use stonedual::finitesgp::{symmetric_inverse_monoid, MulTable};

/// The inverse subsemigroup of I(3) generated by `gens` and zero.
fn generated(gens: &[usize]) -> MulTable {
    let i3 = symmetric_inverse_monoid(3).unwrap();
    let mut set = vec![i3.zero()];
    for &g in gens {
        let g = g % i3.size();
        set.push(g);
        set.push(i3.inv(g));
    }
    set.sort_unstable();
    set.dedup();
    loop {
        let mut next = set.clone();
        for &a in &set {
            for &b in &set {
                next.push(i3.mul(a, b));
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.len() == set.len() {
            break;
        }
        set = next;
    }
    i3.restrict(&set).unwrap().0
}

fn sizes_of_ik() -> [usize; 4] {
    [2, 7, 34, 209]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn ultrafilters_are_tight(gens in prop::collection::vec(0usize..34, 1..4)) {
        let s = generated(&gens);
        let tight: Vec<usize> = tight_filters(&s).iter().map(|f| f.generator).collect();
        for u in ultrafilters(&s) {
            prop_assert!(tight.contains(&u.generator));
            prop_assert!(is_tight_filter(&s, u.generator).unwrap());
        }
    }

    #[test]
    fn completion_is_distributive_and_delta_covers(gens in prop::collection::vec(0usize..34, 1..4)) {
        let s = generated(&gens);
        prop_assume!(s.predicates().meet_semigroup);
        let q = lenz_congruence(&s).unwrap();
        prop_assert!(q.table.predicates().separative);
        let c = distributive_completion(&s).unwrap();
        prop_assert!(c.table.predicates().distributive);
        prop_assert!(c.table.size() >= q.table.size());
        for a in s.elements() {
            prop_assert_eq!(c.delta[a] == c.table.zero(), a == s.zero());
        }
        check_cover_to_join(&s, &c.table, &c.delta).unwrap();
        if c.table.predicates().boolean {
            let iso = comparison_isomorphism(&s).unwrap();
            prop_assert_eq!(iso.len(), c.table.size());
        }
    }

    #[test]
    fn boolean_tables_dualize(gens in prop::collection::vec(0usize..34, 1..4)) {
        let s = generated(&gens);
        let p = s.predicates();
        prop_assume!(p.boolean && p.meet_semigroup);
        let r = duality_roundtrip(&s).unwrap();
        prop_assert_eq!(r.bisections.table.size(), s.size());
        let g = ultrafilter_groupoid(&s).unwrap();
        prop_assert_eq!(g.groupoid.is_principal(), p.fundamental);
        prop_assert_eq!(principal_criterion(&s).unwrap(), p.fundamental);
        let ideals = ideal_correspondence(&s).unwrap();
        prop_assert_eq!(ideals.ideals.len(), ideals.invariant.len());
    }

    #[test]
    fn booleanization_of_idempotents(gens in prop::collection::vec(0usize..34, 1..4)) {
        let s = generated(&gens);
        prop_assume!(s.predicates().meet_semigroup);
        let r = booleanization_report(&s).unwrap();
        prop_assert!(r.tight_eq_ultra && r.d_boolean);
        prop_assert!(r.unital && r.compactable);
        prop_assert!(r.part1_iso);
    }

    #[test]
    fn classifier_only_accepts_symmetric_sizes(gens in prop::collection::vec(0usize..34, 1..4)) {
        let s = generated(&gens);
        let c = classify_symmetric(&s).unwrap();
        match c.k {
            Some(k) => prop_assert_eq!(s.size(), sizes_of_ik()[k - 1]),
            None => prop_assert!(c.failure.is_some()),
        }
    }
}

#[test]
fn full_generation_recovers_i3() {
    let s = generated(&(0..34).collect::<Vec<_>>());
    assert_eq!(classify_symmetric(&s).unwrap().k, Some(3));
}
