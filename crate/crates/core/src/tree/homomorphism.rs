//! Surjective tree maps and the closure order on strata.
//!
//! The stratum of a stable tree `T` contains the stratum of `U` in its
//! closure iff there is a surjective tree map `U -> T` collapsing disjoint
//! subtrees of `U` to the vertices of `T` and matching the labels. On
//! trees this is equivalent to: the vertex set of `U` partitions into
//! connected cells indexed by vertices of `T`, the contracted graph is
//! exactly `T`, and each label sits in the cell of its target vertex.

use std::collections::{BTreeMap, BTreeSet};

use super::{LabelledTree, VertexId};

/// Does the stratum of `finer` lie in the closure of the stratum of
/// `coarser`? Equivalently: is there a surjective tree map
/// `finer -> coarser` with `tau(alpha_i) = alpha_i` for every label `i`?
pub fn lies_in_closure_of(finer: &LabelledTree, coarser: &LabelledTree) -> bool {
    if finer.num_marked() != coarser.num_marked()
        || finer.first_label() != coarser.first_label()
        || finer.vertex_count() < coarser.vertex_count()
    {
        return false;
    }
    // Forced assignments: each label's vertex in `finer` must map to the
    // label's vertex in `coarser`.
    let mut forced: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (l, v) in finer.labels() {
        let target = coarser.label_vertex(l).unwrap();
        if let Some(&prev) = forced.get(&v) {
            if prev != target {
                return false;
            }
        } else {
            forced.insert(v, target);
        }
    }
    let unassigned: Vec<VertexId> = finer
        .vertices()
        .filter(|v| !forced.contains_key(v))
        .collect();
    let targets: Vec<VertexId> = coarser.vertices().collect();
    let mut assignment = forced.clone();
    search(finer, coarser, &unassigned, 0, &targets, &mut assignment)
}

fn search(
    finer: &LabelledTree,
    coarser: &LabelledTree,
    unassigned: &[VertexId],
    idx: usize,
    targets: &[VertexId],
    assignment: &mut BTreeMap<VertexId, VertexId>,
) -> bool {
    if idx == unassigned.len() {
        return is_valid_collapse(finer, coarser, assignment);
    }
    let v = unassigned[idx];
    for &t in targets {
        assignment.insert(v, t);
        // cheap local pruning: v must have some neighbor mapping to the
        // same target or to an adjacent one, once all neighbors are known
        if search(finer, coarser, unassigned, idx + 1, targets, assignment) {
            return true;
        }
    }
    assignment.remove(&v);
    false
}

fn is_valid_collapse(
    finer: &LabelledTree,
    coarser: &LabelledTree,
    assignment: &BTreeMap<VertexId, VertexId>,
) -> bool {
    // surjective
    let image: BTreeSet<VertexId> = assignment.values().copied().collect();
    if image.len() != coarser.vertex_count() {
        return false;
    }
    // cells connected
    for &t in &image {
        let cell: BTreeSet<VertexId> = assignment
            .iter()
            .filter(|&(_, &w)| w == t)
            .map(|(&v, _)| v)
            .collect();
        if !is_connected(finer, &cell) {
            return false;
        }
    }
    // contracted edge set equals the coarser edge set
    let mut contracted: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for (a, b) in finer.edges() {
        let (ia, ib) = (assignment[&a], assignment[&b]);
        if ia != ib {
            contracted.insert((ia.min(ib), ia.max(ib)));
        }
    }
    let coarser_edges: BTreeSet<(VertexId, VertexId)> = coarser.edges().collect();
    contracted == coarser_edges
}

fn is_connected(tree: &LabelledTree, cell: &BTreeSet<VertexId>) -> bool {
    let mut iter = cell.iter();
    let Some(&start) = iter.next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in tree.neighbors(v) {
            if cell.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == cell.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_tree_degenerates_from_one_vertex_tree() {
        let one = LabelledTree::single_vertex(1, 5);
        let split = LabelledTree::new(
            [0, 1],
            [(0, 1)],
            [(1, 0), (2, 0), (3, 1), (4, 1), (5, 1)],
        )
        .unwrap();
        assert!(lies_in_closure_of(&split, &one));
        assert!(!lies_in_closure_of(&one, &split));
    }

    #[test]
    fn reflexive() {
        let t = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 1), (4, 1)]).unwrap();
        assert!(lies_in_closure_of(&t, &t));
    }

    #[test]
    fn incompatible_splits_unrelated() {
        let a = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 1), (4, 1)]).unwrap();
        let b = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (3, 0), (2, 1), (4, 1)]).unwrap();
        assert!(!lies_in_closure_of(&a, &b));
        assert!(!lies_in_closure_of(&b, &a));
    }
}
