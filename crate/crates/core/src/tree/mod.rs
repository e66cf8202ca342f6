//! Labelled trees and their stability combinatorics.
//!
//! A `LabelledTree` is a finite tree together with a distribution of marked
//! point labels over its vertices. Labels are consecutive integers starting
//! at 0 or 1; a vertex may carry any number of labels, including none. The
//! tree records the combinatorial type of a nodal genus-zero curve: vertices
//! are sphere components, edges are nodes, and `n_alpha` counts the special
//! points on a component.

mod canonical;
mod dimension;
mod edge_system;
mod enumerate;
mod homomorphism;
mod stabilize;

pub use canonical::CanonicalForm;
pub use dimension::{moduli_dim, stratum_dim, tangency_moduli_dim, TangencyConstraint};
pub use edge_system::{solve_edge_system, EdgeSolution};
pub use enumerate::{
    enumerate_stable_trees, strata_counts, StableTreeClass, DEFAULT_ENUMERATION_CAP,
};
pub use homomorphism::lies_in_closure_of;
pub use stabilize::{TreeMorphism, VertexMode};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

pub type VertexId = u32;
pub type Label = u32;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum TreeError {
    #[error("tree has no vertices")]
    Empty,
    #[error("edge ({0}, {1}) references an unknown vertex")]
    UnknownVertex(VertexId, VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("graph is not a tree: expected {expected} edges for {vertices} vertices, found {found}")]
    NotATree {
        vertices: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("label {0} is attached to unknown vertex {1}")]
    LabelVertexUnknown(Label, VertexId),
    #[error("labels must be consecutive starting at 0 or 1, got {0:?}")]
    BadLabelRange(Vec<Label>),
    #[error("tree is not stable: vertex {vertex} carries only {special} special points")]
    Unstable { vertex: VertexId, special: usize },
    #[error("no stabilization exists for fewer than 3 marked points (k = {0})")]
    TooFewLabels(usize),
    #[error("enumeration cap exceeded: k = {k} > {cap}")]
    EnumerationCap { k: usize, cap: usize },
    #[error("vertex {0} not in tree")]
    NoSuchVertex(VertexId),
    #[error("weight vector for vertex {vertex} has length {got}, expected {expected}")]
    WeightRank {
        vertex: VertexId,
        got: usize,
        expected: usize,
    },
    #[error("negative symplectic area {area} on vertex {vertex}")]
    NegativeArea { vertex: VertexId, area: i64 },
    #[error("missing weight for vertex {0}")]
    MissingWeight(VertexId),
    #[error("edge data missing for edge ({0}, {1})")]
    MissingEdgeData(VertexId, VertexId),
    #[error("vector length mismatch in edge system: expected {expected}, got {got}")]
    EdgeVectorLength { expected: usize, got: usize },
}

/// A tree with marked-point labels distributed over its vertices.
///
/// Immutable after construction; all invariants (connected, acyclic,
/// consecutive labels) are checked by [`LabelledTree::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledTree {
    vertices: BTreeSet<VertexId>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    labels: BTreeMap<Label, VertexId>,
}

impl LabelledTree {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        labels: impl IntoIterator<Item = (Label, VertexId)>,
    ) -> Result<Self, TreeError> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(TreeError::Empty);
        }
        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> =
            vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        let mut edge_count = 0usize;
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(TreeError::UnknownVertex(a, b));
            }
            let key = (a.min(b), a.max(b));
            if seen.insert(key) {
                edge_count += 1;
                adjacency.get_mut(&a).unwrap().insert(b);
                adjacency.get_mut(&b).unwrap().insert(a);
            }
        }
        if edge_count != vertices.len() - 1 {
            return Err(TreeError::NotATree {
                vertices: vertices.len(),
                expected: vertices.len() - 1,
                found: edge_count,
            });
        }
        // Connectivity: with |E| = |V| - 1 this also rules out cycles.
        let start = *vertices.iter().next().unwrap();
        let mut reached = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[&v] {
                if reached.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if reached.len() != vertices.len() {
            return Err(TreeError::Disconnected);
        }

        let labels: BTreeMap<Label, VertexId> = labels.into_iter().collect();
        for (&l, &v) in &labels {
            if !vertices.contains(&v) {
                return Err(TreeError::LabelVertexUnknown(l, v));
            }
        }
        let keys: Vec<Label> = labels.keys().copied().collect();
        if let (Some(&min), Some(&max)) = (keys.first(), keys.last()) {
            let contiguous = keys.len() as u32 == max - min + 1;
            if !contiguous || min > 1 {
                return Err(TreeError::BadLabelRange(keys));
            }
        }
        Ok(Self {
            vertices,
            adjacency,
            labels,
        })
    }

    /// Single vertex carrying labels `first..=last`.
    pub fn single_vertex(first: Label, last: Label) -> Self {
        Self::new([0], [], (first..=last).map(|l| (l, 0))).unwrap()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges, always `|T| - 1`.
    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Undirected edges as ordered pairs `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .flat_map(|(&v, nbrs)| nbrs.iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency.get(&v).map_or(0, |n| n.len())
    }

    /// Marked-point count. Labels run over `first_label()..=k()`.
    pub fn num_marked(&self) -> usize {
        self.labels.len()
    }

    pub fn first_label(&self) -> Label {
        self.labels.keys().next().copied().unwrap_or(1)
    }

    pub fn max_label(&self) -> Label {
        self.labels.keys().next_back().copied().unwrap_or(0)
    }

    pub fn labels(&self) -> impl Iterator<Item = (Label, VertexId)> + '_ {
        self.labels.iter().map(|(&l, &v)| (l, v))
    }

    /// The vertex carrying label `i`.
    pub fn label_vertex(&self, i: Label) -> Option<VertexId> {
        self.labels.get(&i).copied()
    }

    pub fn labels_at(&self, v: VertexId) -> impl Iterator<Item = Label> + '_ {
        self.labels
            .iter()
            .filter(move |&(_, &w)| w == v)
            .map(|(&l, _)| l)
    }

    /// `n_alpha`: marked points plus adjacent nodes at `v`.
    pub fn special_count(&self, v: VertexId) -> usize {
        self.labels_at(v).count() + self.degree(v)
    }

    /// Every vertex carries at least three special points.
    pub fn is_stable(&self) -> bool {
        self.vertices().all(|v| self.special_count(v) >= 3)
    }

    pub fn check_stable(&self) -> Result<(), TreeError> {
        for v in self.vertices() {
            let special = self.special_count(v);
            if special < 3 {
                return Err(TreeError::Unstable { vertex: v, special });
            }
        }
        Ok(())
    }

    /// Unique path between two vertices, inclusive of both endpoints.
    pub fn path(&self, from: VertexId, to: VertexId) -> Result<Vec<VertexId>, TreeError> {
        if !self.vertices.contains(&from) {
            return Err(TreeError::NoSuchVertex(from));
        }
        if !self.vertices.contains(&to) {
            return Err(TreeError::NoSuchVertex(to));
        }
        let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = BTreeSet::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    prev.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[&cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// First step on the path from `from` towards `target`; `None` when
    /// `from == target`.
    pub fn step_toward(&self, from: VertexId, target: VertexId) -> Result<Option<VertexId>, TreeError> {
        let path = self.path(from, target)?;
        Ok(path.get(1).copied())
    }

    /// Distance map from `root` in edge counts, BFS order.
    pub fn distances_from(&self, root: VertexId) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::from([(root, 0usize)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for w in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Complex dimension of the corresponding moduli stratum.
    pub fn stratum_dim(&self) -> Result<i64, TreeError> {
        self.check_stable()?;
        Ok(dimension::stratum_dim(
            self.num_marked(),
            self.edge_count(),
        ))
    }

    /// Canonical form deciding isomorphism (labels transported).
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &LabelledTree) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn stabilize(&self) -> Result<(LabelledTree, TreeMorphism), TreeError> {
        stabilize::stabilize(self)
    }

    /// Relabel vertices to consecutive ids `0..n`, preserving structure.
    /// Returns the renaming used.
    pub fn compact_ids(&self) -> (LabelledTree, BTreeMap<VertexId, VertexId>) {
        let rename: BTreeMap<VertexId, VertexId> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as VertexId))
            .collect();
        let tree = LabelledTree::new(
            rename.values().copied(),
            self.edges().map(|(a, b)| (rename[&a], rename[&b])),
            self.labels().map(|(l, v)| (l, rename[&v])),
        )
        .unwrap();
        (tree, rename)
    }
}

/// A labelled tree with an integer homology weight on every vertex.
///
/// Weights are coordinate vectors in a fixed basis of second homology;
/// pairing rows for the symplectic area and the first Chern number are
/// supplied alongside so the tree can evaluate `omega(A)` and `c1(A)`
/// without knowing anything about topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    tree: LabelledTree,
    rank: usize,
    weights: BTreeMap<VertexId, Vec<i64>>,
    omega_row: Vec<i64>,
    c1_row: Vec<i64>,
}

impl WeightedTree {
    pub fn new(
        tree: LabelledTree,
        weights: impl IntoIterator<Item = (VertexId, Vec<i64>)>,
        omega_row: Vec<i64>,
        c1_row: Vec<i64>,
    ) -> Result<Self, TreeError> {
        let rank = omega_row.len();
        if c1_row.len() != rank {
            return Err(TreeError::WeightRank {
                vertex: 0,
                got: c1_row.len(),
                expected: rank,
            });
        }
        let weights: BTreeMap<VertexId, Vec<i64>> = weights.into_iter().collect();
        for v in tree.vertices() {
            match weights.get(&v) {
                None => return Err(TreeError::MissingWeight(v)),
                Some(w) if w.len() != rank => {
                    return Err(TreeError::WeightRank {
                        vertex: v,
                        got: w.len(),
                        expected: rank,
                    })
                }
                _ => {}
            }
        }
        let this = Self {
            tree,
            rank,
            weights,
            omega_row,
            c1_row,
        };
        for v in this.tree.vertices() {
            let area = this.omega_of(v);
            if area < 0 {
                return Err(TreeError::NegativeArea { vertex: v, area });
            }
        }
        Ok(this)
    }

    pub fn tree(&self) -> &LabelledTree {
        &self.tree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weight(&self, v: VertexId) -> &[i64] {
        &self.weights[&v]
    }

    pub fn is_ghost(&self, v: VertexId) -> bool {
        self.weights[&v].iter().all(|&c| c == 0)
    }

    pub fn omega_of(&self, v: VertexId) -> i64 {
        dot(&self.omega_row, &self.weights[&v])
    }

    pub fn c1_of(&self, v: VertexId) -> i64 {
        dot(&self.c1_row, &self.weights[&v])
    }

    pub fn total_c1(&self) -> i64 {
        self.tree.vertices().map(|v| self.c1_of(v)).sum()
    }

    pub fn total_omega(&self) -> i64 {
        self.tree.vertices().map(|v| self.omega_of(v)).sum()
    }

    /// Weighted stability: every zero-weight vertex carries at least three
    /// special points. Plain stability implies this, not conversely.
    pub fn is_weighted_stable(&self) -> bool {
        self.tree
            .vertices()
            .all(|v| !self.is_ghost(v) || self.tree.special_count(v) >= 3)
    }

    /// Maximal connected subtrees on which the weight vanishes identically.
    /// Returned as disjoint sorted vertex sets, ordered by minimum vertex.
    pub fn ghost_forest(&self) -> Vec<BTreeSet<VertexId>> {
        let mut remaining: BTreeSet<VertexId> =
            self.tree.vertices().filter(|&v| self.is_ghost(v)).collect();
        let mut forest = Vec::new();
        while let Some(&seed) = remaining.iter().next() {
            let mut component = BTreeSet::from([seed]);
            remaining.remove(&seed);
            let mut queue = VecDeque::from([seed]);
            while let Some(v) = queue.pop_front() {
                for w in self.tree.neighbors(v) {
                    if remaining.remove(&w) {
                        component.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            forest.push(component);
        }
        forest
    }

    /// Labels on non-ghost vertices, plus the maximal label carried by each
    /// ghost tree. Ghost trees without labels contribute nothing.
    pub fn reduced_index_set(&self) -> BTreeSet<Label> {
        let mut reduced: BTreeSet<Label> = self
            .tree
            .labels()
            .filter(|&(_, v)| !self.is_ghost(v))
            .map(|(l, _)| l)
            .collect();
        for ghost in self.ghost_forest() {
            let max_label = self
                .tree
                .labels()
                .filter(|(_, v)| ghost.contains(v))
                .map(|(l, _)| l)
                .max();
            if let Some(l) = max_label {
                reduced.insert(l);
            }
        }
        reduced
    }
}

fn dot(row: &[i64], col: &[i64]) -> i64 {
    row.iter().zip(col).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex() -> LabelledTree {
        // alpha({1,2}) -- beta({3})
        LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 1)]).unwrap()
    }

    #[test]
    fn single_vertex_three_labels_is_stable() {
        let t = LabelledTree::single_vertex(1, 3);
        assert!(t.is_stable());
        assert_eq!(t.special_count(0), 3);
    }

    #[test]
    fn any_tree_with_two_labels_is_unstable() {
        let t = LabelledTree::single_vertex(1, 2);
        assert!(!t.is_stable());
        let t = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 1)]).unwrap();
        assert!(!t.is_stable());
    }

    #[test]
    fn two_vertex_split_detects_unstable_side() {
        let t = two_vertex();
        assert_eq!(t.special_count(0), 3);
        assert_eq!(t.special_count(1), 2);
        assert!(!t.is_stable());
    }

    #[test]
    fn rejects_cycles_and_disconnected_graphs() {
        let err = LabelledTree::new([0, 1, 2], [(0, 1), (1, 2), (2, 0)], [(1, 0)]).unwrap_err();
        assert!(matches!(err, TreeError::NotATree { .. }));
        let err = LabelledTree::new([0, 1, 2, 3], [(0, 1), (2, 3)], [(1, 0)]).unwrap_err();
        assert!(matches!(err, TreeError::NotATree { .. }));
    }

    #[test]
    fn rejects_label_gaps() {
        let err = LabelledTree::new([0], [], [(1, 0), (3, 0)]).unwrap_err();
        assert!(matches!(err, TreeError::BadLabelRange(_)));
    }

    #[test]
    fn label_zero_allowed() {
        let t = LabelledTree::new([0], [], [(0, 0), (1, 0), (2, 0)]).unwrap();
        assert_eq!(t.first_label(), 0);
        assert_eq!(t.num_marked(), 3);
        assert!(t.is_stable());
    }

    #[test]
    fn path_and_step() {
        let t = LabelledTree::new(
            [0, 1, 2, 3],
            [(0, 1), (1, 2), (2, 3)],
            [(1, 0), (2, 3)],
        )
        .unwrap();
        assert_eq!(t.path(0, 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(t.step_toward(0, 3).unwrap(), Some(1));
        assert_eq!(t.step_toward(3, 3).unwrap(), None);
    }

    #[test]
    fn ghost_forest_of_chain() {
        // weights (A, 0, 0, B) on a chain
        let t = LabelledTree::new(
            [0, 1, 2, 3],
            [(0, 1), (1, 2), (2, 3)],
            [(1, 0), (2, 0), (3, 3), (4, 3)],
        )
        .unwrap();
        let w = WeightedTree::new(
            t,
            [(0, vec![1]), (1, vec![0]), (2, vec![0]), (3, vec![2])],
            vec![1],
            vec![3],
        )
        .unwrap();
        let forest = w.ghost_forest();
        assert_eq!(forest.len(), 1);
        assert_eq!(forest[0], BTreeSet::from([1, 2]));
        assert_eq!(w.total_omega(), 3);
        assert_eq!(w.total_c1(), 9);
    }

    #[test]
    fn ghost_forest_trivial_cases() {
        let t = LabelledTree::single_vertex(1, 3);
        let all_nonzero =
            WeightedTree::new(t.clone(), [(0, vec![2])], vec![1], vec![0]).unwrap();
        assert!(all_nonzero.ghost_forest().is_empty());
        let all_zero = WeightedTree::new(t, [(0, vec![0])], vec![1], vec![0]).unwrap();
        let forest = all_zero.ghost_forest();
        assert_eq!(forest.len(), 1);
        assert_eq!(forest[0].len(), 1);
    }

    #[test]
    fn reduced_index_set_rules() {
        // no ghosts: R = {1..k}
        let t = LabelledTree::single_vertex(1, 4);
        let w = WeightedTree::new(t, [(0, vec![1])], vec![1], vec![0]).unwrap();
        assert_eq!(w.reduced_index_set(), (1..=4).collect());

        // ghost tree carrying {2,5} contributes only 5
        let t = LabelledTree::new(
            [0, 1],
            [(0, 1)],
            [(1, 0), (2, 1), (3, 0), (4, 0), (5, 1)],
        )
        .unwrap();
        let w = WeightedTree::new(t, [(0, vec![1]), (1, vec![0])], vec![1], vec![0]).unwrap();
        assert_eq!(w.reduced_index_set(), BTreeSet::from([1, 3, 4, 5]));

        // ghost tree with no labels contributes nothing
        let t = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 0)]).unwrap();
        let w = WeightedTree::new(t, [(0, vec![1]), (1, vec![0])], vec![1], vec![0]).unwrap();
        assert_eq!(w.reduced_index_set(), BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn stability_implies_weighted_stability() {
        let t = two_vertex(); // unstable
        let w = WeightedTree::new(
            t,
            [(0, vec![0]), (1, vec![1])],
            vec![1],
            vec![0],
        )
        .unwrap();
        // weighted stable (the ghost vertex 0 has 3 special points) but unstable
        assert!(w.is_weighted_stable());
        assert!(!w.tree().is_stable());
    }

    #[test]
    fn negative_area_rejected() {
        let t = LabelledTree::single_vertex(1, 3);
        let err = WeightedTree::new(t, [(0, vec![-1])], vec![1], vec![0]).unwrap_err();
        assert!(matches!(err, TreeError::NegativeArea { .. }));
    }
}
