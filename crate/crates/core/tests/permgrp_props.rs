use std::collections::HashSet;

use ehrlab_core::permgrp::{
    invariant_subspaces, permute_bits, wreath_c2_sk, F2Subspace, Perm, PermGroup, TransitiveTable,
};
use proptest::prelude::*;

const TABLE_FILE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/transitive_2_8.json");

#[test]
fn table_lattice_matches_regeneration() {
    let text = std::fs::read_to_string(TABLE_FILE).unwrap();
    let shipped = TransitiveTable::from_json(&text).unwrap();
    let fresh = TransitiveTable::regenerate(&text).unwrap();
    for (a, b) in shipped.entries().iter().zip(fresh.entries()) {
        assert_eq!(a.maximal_subgroups, b.maximal_subgroups, "{}", a.name);
    }
}

#[test]
fn every_entry_identifies_as_itself() {
    let t = TransitiveTable::bundled();
    assert_eq!(t.entries().len(), 86);
    for e in t.entries() {
        assert_eq!(e.group.order(), e.order);
        // a relabelled copy must come back to the same entry
        let n = e.degree;
        let shift: Vec<usize> = (0..n).map(|i| (i * 3 + 1) % n).collect();
        let c = Perm::from_images(&shift).unwrap_or_else(|_| Perm::identity(n));
        let g = e.group.conjugate(&c);
        let (found, d) = t.identify(&g).unwrap();
        assert_eq!((found.degree, found.index), (e.degree, e.index));
        assert!(g.conjugate(&d).is_subgroup_of(&found.group));
    }
}

#[test]
fn maximal_embeddings_have_proper_index() {
    let t = TransitiveTable::bundled();
    for e in t.entries() {
        for (h, emb) in t.maximal_subgroup_groups(e) {
            assert!(emb.is_subgroup_of(&e.group));
            assert!(emb.is_transitive());
            assert_eq!(emb.order(), h.order);
            assert_eq!(e.order % h.order, 0);
        }
    }
}

#[test]
fn top_of_degree_eight() {
    let t = TransitiveTable::bundled();
    let s8 = t.symmetric(8).unwrap();
    assert_eq!(s8.order, 40320);
    let mut names: Vec<&str> = t
        .maximal_subgroup_groups(s8)
        .iter()
        .map(|(e, _)| e.name.as_str())
        .collect();
    names.sort_unstable();
    assert_eq!(names, vec!["A8", "C2wrS4", "PGL(2,7)", "S4wrC2"]);
}

fn brute_invariant_subspaces(k: usize, gens: &[Perm]) -> HashSet<F2Subspace> {
    // every subspace is the span of its elements; enumerate subsets closed under xor
    let mut out = HashSet::new();
    let mut frontier = vec![F2Subspace::span(k, [])];
    let mut seen: HashSet<F2Subspace> = frontier.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for v in 1u32..1 << k {
            if !s.contains(v) {
                let t = F2Subspace::span(k, s.basis.iter().copied().chain([v]));
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    for s in seen {
        let inv = s
            .basis
            .iter()
            .all(|&b| gens.iter().all(|g| s.contains(permute_bits(b, g))));
        if inv {
            out.insert(s);
        }
    }
    out
}

#[test]
fn invariant_subspaces_match_brute_force() {
    for k in 1..=4 {
        for q in [PermGroup::symmetric(k), PermGroup::alternating(k)] {
            let fast: HashSet<F2Subspace> = invariant_subspaces(k, q.generators())
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(fast, brute_invariant_subspaces(k, q.generators()), "k={k}");
        }
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_order_matches_closure(gens in prop::collection::vec(perm_strategy(6), 1..3)) {
        let g = PermGroup::new(6, &gens).unwrap();
        let mut seen: HashSet<Perm> = HashSet::from([Perm::identity(6)]);
        let mut stack = vec![Perm::identity(6)];
        while let Some(x) = stack.pop() {
            for s in &gens {
                let y = &x * s;
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        prop_assert_eq!(g.order(), seen.len() as u64);
        for x in seen.iter().take(20) {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn coset_reps_are_inequivalent(c in perm_strategy(5)) {
        let g = PermGroup::symmetric(5);
        let h = PermGroup::from_cycle_strings(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).unwrap().conjugate(&c);
        let reps = g.coset_representatives(&h).unwrap();
        prop_assert_eq!(reps.len() as u64, g.order() / h.order());
        prop_assert!(reps[0].is_identity());
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                if i != j {
                    prop_assert!(!h.contains(&(&reps[i] * &reps[j].inverse())));
                }
            }
        }
    }

    #[test]
    fn conjugated_subgroups_are_found(c in perm_strategy(6), pick in 0usize..16) {
        let t = TransitiveTable::bundled();
        let e = t.of_degree(6).nth(pick).unwrap();
        for (_, h) in t.maximal_subgroup_groups(e) {
            let moved = h.conjugate(&c);
            let d = e.group.conjugate_containment(&moved).unwrap();
            prop_assert!(d.is_some());
            prop_assert!(moved.conjugate(&d.unwrap()).is_subgroup_of(&e.group));
        }
    }
}

#[test]
fn wreath_contains_block_swaps() {
    let w = wreath_c2_sk(3).unwrap();
    assert!(w.contains(&Perm::from_cycles(6, "(3,4)").unwrap()));
    assert!(w.contains(&Perm::from_cycles(6, "(1,3)(2,4)").unwrap()));
    assert!(!w.contains(&Perm::from_cycles(6, "(2,3)").unwrap()));
}
