//! Property tests for the structural invariants.

use proptest::prelude::*;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use strata_core::curve::{all_stable_decompositions, StableDecomposition, TripleType};
use strata_core::tree::{solve_edge_system, LabelledTree, Label, VertexId, WeightedTree};

/// Random labelled tree: a parent pointer for each non-root vertex plus a
/// label assignment.
fn arbitrary_tree() -> impl Strategy<Value = LabelledTree> {
    (2usize..9, 3u32..9)
        .prop_flat_map(|(m, k)| {
            let parents: Vec<BoxedStrategy<usize>> =
                (1..m).map(|v| (0..v).boxed()).collect();
            (
                Just(m),
                parents,
                proptest::collection::vec(0..m, k as usize),
            )
        })
        .prop_map(|(m, parents, label_spots)| {
            let edges: Vec<(VertexId, VertexId)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| ((i + 1) as VertexId, p as VertexId))
                .collect();
            let labels: Vec<(Label, VertexId)> = label_spots
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as Label + 1, v as VertexId))
                .collect();
            LabelledTree::new(0..m as VertexId, edges, labels).unwrap()
        })
}

proptest! {
    #[test]
    fn stabilization_is_idempotent_and_label_preserving(tree in arbitrary_tree()) {
        let (stable, morphism) = tree.stabilize().unwrap();
        prop_assert!(stable.is_stable());
        prop_assert_eq!(stable.num_marked(), tree.num_marked());
        // second pass is the identity
        let (again, m2) = stable.stabilize().unwrap();
        prop_assert_eq!(&again, &stable);
        prop_assert!(m2.is_identity());
        // every vertex maps onto a surviving vertex
        for v in tree.vertices() {
            let image = morphism.apply(v).unwrap();
            prop_assert!(stable.contains_vertex(image));
        }
        // labels land on the image of their original vertex
        for (l, v) in tree.labels() {
            prop_assert_eq!(stable.label_vertex(l).unwrap(), morphism.apply(v).unwrap());
        }
    }

    #[test]
    fn stability_implies_weighted_stability(tree in arbitrary_tree(), seed in 0u64..1000) {
        let weights: Vec<(VertexId, Vec<i64>)> = tree
            .vertices()
            .enumerate()
            .map(|(i, v)| (v, vec![((seed as i64 + i as i64) % 3).max(0)]))
            .collect();
        let w = WeightedTree::new(tree.clone(), weights, vec![1], vec![0]).unwrap();
        if tree.is_stable() {
            prop_assert!(w.is_weighted_stable());
        }
    }

    #[test]
    fn edge_solver_exact_on_random_trees(
        tree in arbitrary_tree(),
        nums in proptest::collection::vec(-40i64..40, 64),
    ) {
        let mut it = nums.iter().cycle();
        let mut next = || BigRational::new((*it.next().unwrap()).into(), 3.into());
        let mut v_edge = BTreeMap::new();
        for (a, b) in tree.edges() {
            v_edge.insert((a, b), vec![next()]);
            v_edge.insert((b, a), vec![next()]);
        }
        let root = tree.vertices().next().unwrap();
        let sol = solve_edge_system(&tree, root, &v_edge, &[next()]).unwrap();
        for res in sol.residuals(&tree, &v_edge) {
            prop_assert!(res.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn refinement_is_a_partial_order_on_types(k in 3u32..6) {
        let all = all_stable_decompositions(k);
        // reflexivity and the discrete element
        let discrete = StableDecomposition::discrete(k);
        for dec in &all {
            prop_assert!(dec.refines(dec));
            prop_assert!(discrete.refines(dec));
        }
    }

    #[test]
    fn triple_types_partition_all_triples(k in 4u32..7, idx in 0usize..100) {
        let all = all_stable_decompositions(k);
        let dec = &all[idx % all.len()];
        for (i, j, m) in StableDecomposition::triples(k) {
            // the classification is total and consistent with equivalence
            let t = dec.triple_type(i, j, m).unwrap();
            let pairs = [(i, j), (i, m), (j, m)]
                .iter()
                .filter(|&&(a, b)| dec.equivalent(a, b))
                .count();
            let expected = match pairs {
                0 => TripleType::I,
                1 => TripleType::II,
                _ => TripleType::III,
            };
            prop_assert_eq!(t, expected);
        }
    }
}
