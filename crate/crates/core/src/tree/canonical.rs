//! Canonical forms for labelled trees.
//!
//! Isomorphism of labelled trees (bijective tree maps transporting the
//! label distribution) is decided by a canonical encoding: the rooted
//! AHU-style code, minimized over all choices of root. Two trees are
//! isomorphic iff their canonical forms are equal, so enumeration can
//! deduplicate by storing forms in a set.

use super::{Label, LabelledTree, VertexId};

/// Rooted code: labels carried by the vertex, then the sorted child codes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Code {
    labels: Vec<Label>,
    children: Vec<Code>,
}

/// Root-independent certificate for a labelled tree's isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Code);

impl CanonicalForm {
    /// Flat string rendering, stable across runs; usable as a map key in
    /// reports.
    pub fn fingerprint(&self) -> String {
        let mut out = String::new();
        render(&self.0, &mut out);
        out
    }
}

fn render(code: &Code, out: &mut String) {
    out.push('(');
    for (i, l) in code.labels.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&l.to_string());
    }
    for child in &code.children {
        render(child, out);
    }
    out.push(')');
}

fn rooted_code(tree: &LabelledTree, v: VertexId, parent: Option<VertexId>) -> Code {
    let mut labels: Vec<Label> = tree.labels_at(v).collect();
    labels.sort_unstable();
    let mut children: Vec<Code> = tree
        .neighbors(v)
        .filter(|&w| Some(w) != parent)
        .map(|w| rooted_code(tree, w, Some(v)))
        .collect();
    children.sort();
    Code { labels, children }
}

pub fn canonical_form(tree: &LabelledTree) -> CanonicalForm {
    let best = tree
        .vertices()
        .map(|v| rooted_code(tree, v, None))
        .min()
        .expect("tree is nonempty");
    CanonicalForm(best)
}
