//! Enumeration of stable labelled trees up to isomorphism.
//!
//! A stable tree with `k` labels has at most `k - 2` vertices (summing
//! `n_alpha >= 3` over vertices gives `k + 2e(T) >= 3|T|`). Tree shapes are
//! grown by leaf attachment with canonical-form deduplication; labels are
//! then distributed, first as per-vertex counts filtered by stability, then
//! as concrete assignments. Every candidate is canonicalized, so the result
//! is duplicate-free and deterministically ordered.

use std::collections::BTreeSet;

use super::{CanonicalForm, Label, LabelledTree, TreeError, VertexId};

/// Above this many labels the stratum count grows too fast for exhaustive
/// enumeration; callers must raise the cap explicitly.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// One isomorphism class of stable trees, with its certificate.
#[derive(Debug, Clone)]
pub struct StableTreeClass {
    pub representative: LabelledTree,
    pub canonical: CanonicalForm,
}

/// All isomorphism classes of stable trees with labels `1..=k`, optionally
/// restricted to at most `max_edges` edges. Ordered by (edge count,
/// canonical form).
pub fn enumerate_stable_trees(
    k: usize,
    max_edges: Option<usize>,
    cap: usize,
) -> Result<Vec<StableTreeClass>, TreeError> {
    if !(3..=cap).contains(&k) {
        return Err(TreeError::EnumerationCap { k, cap });
    }
    let max_vertices = match max_edges {
        Some(e) => (e + 1).min(k - 2),
        None => k - 2,
    };

    let mut classes: Vec<(usize, CanonicalForm, LabelledTree)> = Vec::new();
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();

    for shape in tree_shapes(max_vertices) {
        let m = shape.vertex_count();
        let degrees: Vec<usize> = (0..m as VertexId).map(|v| shape.degree(v)).collect();
        for counts in label_count_vectors(k, &degrees) {
            for assignment in distributions(k, &counts) {
                let tree = LabelledTree::new(
                    shape.vertices(),
                    shape.edges(),
                    assignment
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| (i as Label + 1, v)),
                )
                .unwrap();
                debug_assert!(tree.is_stable());
                let form = tree.canonical_form();
                if seen.insert(form.clone()) {
                    classes.push((tree.edge_count(), form, tree));
                }
            }
        }
    }
    classes.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(classes
        .into_iter()
        .map(|(_, canonical, representative)| StableTreeClass {
            representative,
            canonical,
        })
        .collect())
}

/// Class counts grouped by edge number, `counts[e]` = number of classes
/// with `e` edges.
pub fn strata_counts(k: usize, cap: usize) -> Result<Vec<usize>, TreeError> {
    let classes = enumerate_stable_trees(k, None, cap)?;
    let mut counts = vec![0usize; k.saturating_sub(2).max(1)];
    for c in classes {
        counts[c.representative.edge_count()] += 1;
    }
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    Ok(counts)
}

/// Unlabeled tree shapes on 1..=max_vertices vertices (vertices named
/// 0..m), one representative per isomorphism class.
fn tree_shapes(max_vertices: usize) -> Vec<LabelledTree> {
    let mut shapes: Vec<LabelledTree> = vec![LabelledTree::new([0], [], []).unwrap()];
    let mut frontier = shapes.clone();
    for m in 2..=max_vertices {
        let mut next = Vec::new();
        let mut seen = BTreeSet::new();
        for shape in &frontier {
            for v in shape.vertices() {
                let grown = LabelledTree::new(
                    shape.vertices().chain([m as VertexId - 1]),
                    shape.edges().chain([(v, m as VertexId - 1)]),
                    [],
                )
                .unwrap();
                let form = grown.canonical_form();
                if seen.insert(form) {
                    next.push(grown);
                }
            }
        }
        shapes.extend(next.iter().cloned());
        frontier = next;
    }
    shapes
}

/// Per-vertex label counts making the shape stable: `counts[v] + deg(v) >= 3`
/// and `sum counts = k`.
fn label_count_vectors(k: usize, degrees: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut counts = vec![0usize; degrees.len()];
    fill_counts(k, degrees, 0, &mut counts, &mut out);
    out
}

fn fill_counts(
    remaining: usize,
    degrees: &[usize],
    idx: usize,
    counts: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if idx == degrees.len() {
        if remaining == 0 {
            out.push(counts.clone());
        }
        return;
    }
    let need = 3usize.saturating_sub(degrees[idx]);
    // later vertices need at least their own minima
    let later_need: usize = degrees[idx + 1..]
        .iter()
        .map(|&d| 3usize.saturating_sub(d))
        .sum();
    if need + later_need > remaining {
        return;
    }
    for c in need..=(remaining - later_need) {
        counts[idx] = c;
        fill_counts(remaining - c, degrees, idx + 1, counts, out);
    }
    counts[idx] = 0;
}

/// Concrete assignments label -> vertex realizing the given per-vertex
/// counts. `result[i]` is the vertex of label `i + 1`.
fn distributions(k: usize, counts: &[usize]) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut assignment = vec![0 as VertexId; k];
    let mut left = counts.to_vec();
    fill_assignment(0, k, &mut left, &mut assignment, &mut out);
    out
}

fn fill_assignment(
    label_idx: usize,
    k: usize,
    left: &mut Vec<usize>,
    assignment: &mut Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    if label_idx == k {
        out.push(assignment.clone());
        return;
    }
    for v in 0..left.len() {
        if left[v] > 0 {
            left[v] -= 1;
            assignment[label_idx] = v as VertexId;
            fill_assignment(label_idx + 1, k, left, assignment, out);
            left[v] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_single_class() {
        let classes = enumerate_stable_trees(3, None, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].representative.vertex_count(), 1);
    }

    #[test]
    fn k4_counts() {
        assert_eq!(strata_counts(4, DEFAULT_ENUMERATION_CAP).unwrap(), vec![1, 3]);
    }

    #[test]
    fn k5_counts() {
        assert_eq!(
            strata_counts(5, DEFAULT_ENUMERATION_CAP).unwrap(),
            vec![1, 10, 15]
        );
    }

    #[test]
    fn max_edges_restricts() {
        let classes = enumerate_stable_trees(5, Some(1), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(classes.len(), 11);
        assert!(classes.iter().all(|c| c.representative.edge_count() <= 1));
    }

    #[test]
    fn cap_enforced() {
        let err = enumerate_stable_trees(9, None, 8).unwrap_err();
        assert!(matches!(err, TreeError::EnumerationCap { .. }));
        assert!(enumerate_stable_trees(9, Some(1), 9).is_ok());
    }

    #[test]
    fn all_enumerated_dims_consistent() {
        for k in 3..=6 {
            for class in enumerate_stable_trees(k, None, 8).unwrap() {
                let t = &class.representative;
                let dim = t.stratum_dim().unwrap();
                assert!(dim >= 0);
                assert_eq!(dim + t.edge_count() as i64, k as i64 - 3);
            }
        }
    }
}
