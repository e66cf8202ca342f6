//! Canonical stabilization of labelled trees.
//!
//! Vertices with fewer than three special points are deleted one cascade at
//! a time. A deleted leaf hands its labels to its unique neighbor; a
//! deleted two-valent vertex (necessarily label-free) is absorbed into the
//! edge joining its neighbors. The induced tree morphism sends every
//! deleted vertex to its nearest surviving vertex in the original tree;
//! when a label-free vertex is equidistant from two survivors the smaller
//! vertex id wins. Labelled vertices never face such a tie: a vertex with a
//! label and survivors in two directions keeps three special points and is
//! never deleted.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Label, LabelledTree, TreeError, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexMode {
    /// The vertex survives; the map restricts to a bijection near it.
    Bijective,
    /// The vertex is collapsed onto its image.
    Collapsed,
}

/// A surjective tree map recorded vertex by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMorphism {
    vertex_map: BTreeMap<VertexId, VertexId>,
    collapsed: BTreeSet<VertexId>,
}

impl TreeMorphism {
    pub fn identity(tree: &LabelledTree) -> Self {
        Self {
            vertex_map: tree.vertices().map(|v| (v, v)).collect(),
            collapsed: BTreeSet::new(),
        }
    }

    pub fn apply(&self, v: VertexId) -> Option<VertexId> {
        self.vertex_map.get(&v).copied()
    }

    pub fn mode(&self, v: VertexId) -> Option<VertexMode> {
        self.vertex_map.get(&v).map(|_| {
            if self.collapsed.contains(&v) {
                VertexMode::Collapsed
            } else {
                VertexMode::Bijective
            }
        })
    }

    pub fn collapsed_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.collapsed.iter().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.collapsed.is_empty() && self.vertex_map.iter().all(|(&v, &w)| v == w)
    }
}

/// Vertices remaining after all deletion cascades have run.
fn survivors(tree: &LabelledTree) -> BTreeSet<VertexId> {
    let mut alive: BTreeSet<VertexId> = tree.vertices().collect();
    let mut degree: BTreeMap<VertexId, usize> =
        tree.vertices().map(|v| (v, tree.degree(v))).collect();
    // Label counts migrate during the cascade.
    let mut label_count: BTreeMap<VertexId, usize> = tree
        .vertices()
        .map(|v| (v, tree.labels_at(v).count()))
        .collect();
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = tree
        .vertices()
        .map(|v| (v, tree.neighbors(v).collect()))
        .collect();

    let mut queue: VecDeque<VertexId> = alive
        .iter()
        .copied()
        .filter(|&v| label_count[&v] + degree[&v] < 3)
        .collect();
    let mut pending: BTreeSet<VertexId> = queue.iter().copied().collect();

    while let Some(v) = queue.pop_front() {
        pending.remove(&v);
        if !alive.contains(&v) || label_count[&v] + degree[&v] >= 3 {
            continue;
        }
        if alive.len() == 1 {
            break; // nothing left to collapse into
        }
        let nbrs: Vec<VertexId> = adj[&v].iter().copied().collect();
        match nbrs.len() {
            1 => {
                let w = nbrs[0];
                *label_count.get_mut(&w).unwrap() += label_count[&v];
                adj.get_mut(&w).unwrap().remove(&v);
                *degree.get_mut(&w).unwrap() -= 1;
                alive.remove(&v);
                if label_count[&w] + degree[&w] < 3 && pending.insert(w) {
                    queue.push_back(w);
                }
            }
            2 => {
                // two-valent with n < 3 means label-free: splice the edge
                let (a, b) = (nbrs[0], nbrs[1]);
                adj.get_mut(&a).unwrap().remove(&v);
                adj.get_mut(&b).unwrap().remove(&v);
                adj.get_mut(&a).unwrap().insert(b);
                adj.get_mut(&b).unwrap().insert(a);
                alive.remove(&v);
                // degrees of a and b are unchanged
            }
            _ => {} // degree 0 single vertex handled above; degree >= 3 never enqueued
        }
    }
    alive
}

pub fn stabilize(tree: &LabelledTree) -> Result<(LabelledTree, TreeMorphism), TreeError> {
    if tree.num_marked() < 3 {
        return Err(TreeError::TooFewLabels(tree.num_marked()));
    }
    if tree.is_stable() {
        return Ok((tree.clone(), TreeMorphism::identity(tree)));
    }

    let alive = survivors(tree);
    debug_assert!(!alive.is_empty());

    // Assign every vertex to its nearest survivor; ties (possible only for
    // label-free vertices) go to the smallest survivor id.
    let mut assignment: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for v in tree.vertices() {
        if alive.contains(&v) {
            assignment.insert(v, v);
            continue;
        }
        let dist = tree.distances_from(v);
        let target = alive
            .iter()
            .copied()
            .min_by_key(|s| (dist[s], *s))
            .unwrap();
        if tree.labels_at(v).next().is_some() {
            // a labelled deleted vertex has survivors in one direction only
            debug_assert_eq!(
                alive.iter().filter(|s| dist[s] == dist[&target]).count(),
                1,
                "label migration hit an equidistant survivor pair"
            );
        }
        assignment.insert(v, target);
    }

    // Edges of the stabilized tree: original edges whose endpoints land in
    // different cells.
    let edges: Vec<(VertexId, VertexId)> = tree
        .edges()
        .filter_map(|(a, b)| {
            let (ia, ib) = (assignment[&a], assignment[&b]);
            (ia != ib).then_some((ia, ib))
        })
        .collect();
    let labels: Vec<(Label, VertexId)> = tree
        .labels()
        .map(|(l, v)| (l, assignment[&v]))
        .collect();
    let stable = LabelledTree::new(alive.iter().copied(), edges, labels)?;
    stable.check_stable()?;

    let collapsed: BTreeSet<VertexId> = tree.vertices().filter(|v| !alive.contains(v)).collect();
    Ok((
        stable,
        TreeMorphism {
            vertex_map: assignment,
            collapsed,
        },
    ))
}
