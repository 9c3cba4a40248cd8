//! Property tests: randomized two-block hypergraphs checked against the
//! pasted-lattice layer, and randomized generator sets against filter laws.

use proptest::prelude::*;

use omlkit_core::*;

/// A two-block hypergraph with 2..=4 atoms per block, optionally sharing
/// one atom, at most 8 atoms total.
fn two_block_hypergraph() -> impl Strategy<Value = ContextHypergraph> {
    (2usize..=4, 2usize..=4, any::<bool>()).prop_map(|(size1, size2, share)| {
        let shared = if share { 1 } else { 0 };
        let atom_count = size1 + size2 - shared;
        let labels = (0..atom_count).map(|i| format!("p{i}")).collect();
        let block1: Vec<usize> = (0..size1).collect();
        let block2: Vec<usize> = (size1 - shared..size1 - shared + size2).collect();
        ContextHypergraph::new(labels, vec![block1, block2]).unwrap()
    })
}

proptest! {
    /// Layer equivalence: an exactly-one-per-block assignment exists exactly
    /// when the pasted lattice has a global valuation, and the counts agree.
    #[test]
    fn hypergraph_assignments_match_pasted_global_valuations(h in two_block_hypergraph()) {
        let pasted = paste_greechie(&h).unwrap();
        prop_assert!(pasted.check_orthomodular().is_ok());

        let assignments = count_assignments(&h);
        let valuations = count_global_valuations(&pasted).unwrap();
        prop_assert_eq!(assignments, valuations);

        let found = matches!(hypergraph_assignment(&h), AssignmentOutcome::Assignment(_));
        prop_assert_eq!(found, find_global_valuation(&pasted).unwrap().is_some());
    }

    /// Pasting then re-reading the canonical document is the identity.
    #[test]
    fn pasted_lattices_round_trip_through_documents(h in two_block_hypergraph()) {
        let pasted = paste_greechie(&h).unwrap();
        let doc = emit_lattice(&pasted);
        prop_assert_eq!(parse_lattice(&doc).unwrap(), pasted);
    }

    /// Random generator subsets of the 16-element Boolean block: the
    /// generated filter contains its generators, is upward closed, is meet
    /// closed, and is the upward closure of the generators' meet.
    #[test]
    fn generated_filters_satisfy_filter_laws(mask in 0u16..) {
        let CatalogEntry::Lattice(b16) = catalog("b16").unwrap() else { unreachable!() };
        let block = Block::new(&b16, b16.elements()).unwrap();
        let gens: Vec<usize> =
            (0..16).filter(|&i| mask & (1 << i) != 0).collect();
        let f = generated_filter(&b16, &block, &gens).unwrap();
        for &g in &gens {
            prop_assert!(f.contains(g));
        }
        for &a in f.members() {
            for x in b16.elements() {
                if b16.leq(a, x) {
                    prop_assert!(f.contains(x));
                }
            }
            for &b in f.members() {
                prop_assert!(f.contains(b16.meet(a, b)));
            }
        }
        let m = b16.meet_all(gens.iter().copied());
        let expected: Vec<usize> = b16.elements().filter(|&x| b16.leq(m, x)).collect();
        prop_assert_eq!(f.members(), expected.as_slice());
    }

    /// Every triple in a Boolean fixture distributes.
    #[test]
    fn boolean_triples_always_distribute(
        a in 0usize..16, b in 0usize..16, c in 0usize..16
    ) {
        let CatalogEntry::Lattice(b16) = catalog("b16").unwrap() else { unreachable!() };
        let r = b16.distributive_triple(a, b, c);
        prop_assert!(r.holds_d && r.holds_dstar && r.holds_t);
    }

    /// The triple report invariant: T implies D and D* for all
    /// permutations, on an arbitrary catalog lattice and random triple.
    #[test]
    fn triple_report_t_implies_all_permutations(
        name in prop::sample::select(vec!["mo2", "mo3", "o6", "mo2xb2", "g2shared"]),
        seed in any::<u64>(),
    ) {
        let CatalogEntry::Lattice(l) = catalog(name).unwrap() else { unreachable!() };
        let n = l.element_count();
        let (a, b, c) =
            ((seed % n as u64) as usize, ((seed / 7) % n as u64) as usize, ((seed / 49) % n as u64) as usize);
        let r = l.distributive_triple(a, b, c);
        if r.holds_t {
            for &(x, y, z) in
                &[(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
            {
                let p = l.distributive_triple(x, y, z);
                prop_assert!(p.holds_d && p.holds_dstar);
            }
        }
    }
}
