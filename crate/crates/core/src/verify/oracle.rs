//! Independent brute-force enumerator of stable labelled trees.
//!
//! Deliberately naive so it shares no code with the production
//! enumerator: labelled trees come from all Prüfer sequences, label
//! assignments are enumerated exhaustively, stability is filtered with the
//! raw definition, and isomorphism classes are collapsed by minimizing an
//! encoding over all vertex permutations.

use std::collections::BTreeSet;

/// Canonical key of one labelled stable tree: edge list plus the label
/// assignment, both minimized over all vertex permutations.
type TreeKey = (Vec<(usize, usize)>, Vec<usize>);

/// Number of stable-tree isomorphism classes with `k` labels, indexed by
/// edge count.
pub fn stable_tree_counts_brute(k: usize) -> Vec<usize> {
    assert!((3..=6).contains(&k), "oracle built for small k only");
    let max_vertices = k.saturating_sub(2).max(1);
    let mut classes: Vec<BTreeSet<TreeKey>> = vec![BTreeSet::new(); max_vertices];
    for m in 1..=max_vertices {
        for edges in all_labelled_trees(m) {
            // every way of assigning the k labels to the m vertices
            let mut assignment = vec![0usize; k];
            loop {
                if is_stable(m, &edges, &assignment) {
                    let key = canonical_key(m, &edges, &assignment);
                    classes[m - 1].insert(key);
                }
                if !increment(&mut assignment, m) {
                    break;
                }
            }
        }
    }
    classes.into_iter().map(|set| set.len()).collect()
}

/// All labelled trees on vertices `0..m` via Prüfer decoding.
fn all_labelled_trees(m: usize) -> Vec<Vec<(usize, usize)>> {
    if m == 1 {
        return vec![Vec::new()];
    }
    if m == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let mut seq = vec![0usize; m - 2];
    loop {
        out.push(prufer_decode(m, &seq));
        if !increment(&mut seq, m) {
            break;
        }
    }
    out
}

fn prufer_decode(m: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; m];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    let mut seq = seq.to_vec();
    while let Some(leaf) = (0..m).find(|&v| degree[v] == 1) {
        if seq.is_empty() {
            break;
        }
        let target = seq.remove(0);
        edges.push((leaf.min(target), leaf.max(target)));
        degree[leaf] -= 1;
        degree[target] -= 1;
    }
    let rest: Vec<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn is_stable(m: usize, edges: &[(usize, usize)], assignment: &[usize]) -> bool {
    let mut special = vec![0usize; m];
    for &(a, b) in edges {
        special[a] += 1;
        special[b] += 1;
    }
    for &v in assignment {
        special[v] += 1;
    }
    special.iter().all(|&n| n >= 3)
}

/// Minimal encoding over all vertex permutations.
fn canonical_key(m: usize, edges: &[(usize, usize)], assignment: &[usize]) -> TreeKey {
    let mut best: Option<TreeKey> = None;
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        let mut mapped_edges: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        mapped_edges.sort_unstable();
        let mapped_labels: Vec<usize> = assignment.iter().map(|&v| perm[v]).collect();
        let key = (mapped_edges, mapped_labels);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
