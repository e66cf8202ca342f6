//! Extension operators and assembled coherent maps.
//!
//! An extension operator attaches a compactly supported stratum function
//! to a stable decomposition `I` and extends it to all curves: the value
//! is the product of cutoffs along the type II cross ratios of `I`, times
//! complementary cutoffs along the type I cross ratios, times the stratum
//! function evaluated through the distinguished cross-ratio coordinates.
//! On the stratum of `I` the operator restricts to the function itself; on
//! strata not refining `I` it vanishes identically; everywhere it is
//! linear in the data and its values only shrink, so star-shaped ranges
//! are preserved.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use super::cutoff::Cutoff;
use super::expr::XiFunction;
use crate::curve::{CurveError, NodalCurve, ProjPoint, StableDecomposition, TripleType};
use crate::tree::{Label, LabelledTree, TreeError, VertexId};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum CoherentError {
    #[error("stratum function has the wrong arity: expected {expected} coordinates, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("support violation: type I cross ratio w(0,{0},{1},{2}) lands in the cutoff region while the data is nonzero")]
    SupportViolation(Label, Label, Label),
    #[error("curve labels do not match the decomposition (k = {expected}, got {got})")]
    LabelMismatch { expected: u32, got: u32 },
    #[error("decomposition needs at least 4 parts to carry data, got {0}")]
    TooFewParts(usize),
    #[error("vertex {0} is not in the model tree")]
    NoSuchVertex(VertexId),
    #[error("subtree is not connected")]
    SubtreeNotConnected,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// The stable decomposition induced by placing the extra marked point on
/// vertex `v` of a `k`-labelled tree: singleton `{0}`, one class per label
/// carried by `v`, one class per branch at `v`.
pub fn induced_decomposition(
    tree: &LabelledTree,
    v: VertexId,
) -> Result<StableDecomposition, CoherentError> {
    if !tree.contains_vertex(v) {
        return Err(CoherentError::NoSuchVertex(v));
    }
    let k = tree.max_label();
    let mut parts: Vec<Vec<Label>> = vec![vec![0]];
    for l in tree.labels_at(v) {
        parts.push(vec![l]);
    }
    for branch_root in tree.neighbors(v) {
        // labels reached through this neighbor
        let mut labels = Vec::new();
        for (l, w) in tree.labels() {
            if w == v {
                continue;
            }
            if tree.step_toward(v, w)? == Some(branch_root) {
                labels.push(l);
            }
        }
        if !labels.is_empty() {
            parts.push(labels);
        }
    }
    Ok(StableDecomposition::new(parts, k)?)
}

/// `E_I xi`: one term of a coherent map.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExtensionOperator {
    pub decomposition: StableDecompositionData,
    pub cutoff: Cutoff,
    pub xi: XiFunction,
}

/// Serializable mirror of a stable decomposition (partition given by its
/// parts).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StableDecompositionData {
    pub parts: Vec<Vec<Label>>,
    pub k: Label,
}

impl From<&StableDecomposition> for StableDecompositionData {
    fn from(d: &StableDecomposition) -> Self {
        Self {
            parts: d.parts().map(|p| p.iter().copied().collect()).collect(),
            k: d.k(),
        }
    }
}

impl StableDecompositionData {
    pub fn to_decomposition(&self) -> Result<StableDecomposition, CoherentError> {
        Ok(StableDecomposition::new(self.parts.clone(), self.k)?)
    }
}

/// Evaluation output along with the scalar cutoff factor (used by the
/// star-shape and linearity checks).
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionValue {
    pub value: Vec<f64>,
    pub factor: f64,
    pub data_value: Vec<f64>,
}

impl ExtensionOperator {
    pub fn new(
        decomposition: &StableDecomposition,
        cutoff: Cutoff,
        xi: XiFunction,
    ) -> Result<Self, CoherentError> {
        if decomposition.len() < 4 {
            return Err(CoherentError::TooFewParts(decomposition.len()));
        }
        Ok(Self {
            decomposition: decomposition.into(),
            cutoff,
            xi,
        })
    }

    /// The distinguished coordinates of `I` on an arbitrary stable curve:
    /// `w(0, i_1, i_2, i_j)` over the class minima, `j = 3..=l`.
    pub fn coordinates(
        &self,
        curve: &NodalCurve<f64>,
    ) -> Result<Vec<ProjPoint<f64>>, CoherentError> {
        let dec = self.decomposition.to_decomposition()?;
        let minima = dec.minima();
        let mut coords = Vec::with_capacity(minima.len().saturating_sub(3));
        for j in 3..minima.len() {
            coords.push(curve.cross_ratio_nodal(0, minima[1], minima[2], minima[j])?);
        }
        Ok(coords)
    }

    /// The wider cutoff used to kill type I cross ratios: its plateau
    /// covers the full support of the inner cutoff, so an extension
    /// vanishes identically wherever another decomposition's type II
    /// factors are active. This is what makes supports exactly disjoint.
    pub fn outer_cutoff(&self) -> Cutoff {
        Cutoff::new((self.cutoff.radius * 2.0).min(0.24), self.cutoff.order)
    }

    pub fn evaluate(&self, curve: &NodalCurve<f64>) -> Result<ExtensionValue, CoherentError> {
        let dec = self.decomposition.to_decomposition()?;
        let k = dec.k();
        if curve.tree().max_label() != k || curve.tree().first_label() != 0 {
            return Err(CoherentError::LabelMismatch {
                expected: k,
                got: curve.tree().max_label(),
            });
        }
        let outer = self.outer_cutoff();
        let minima = dec.minima();
        let is_coordinate = |i: Label, j: Label, m: Label| -> bool {
            i == minima[1] && j == minima[2] && minima[3..].contains(&m)
        };
        let mut factor = 1.0f64;
        let mut coordinate_violation: Option<(Label, Label, Label)> = None;
        for (i, j, m) in StableDecomposition::triples(k) {
            match dec.triple_type(i, j, m)? {
                TripleType::II => {
                    let w = curve.cross_ratio_nodal(0, i, j, m)?;
                    factor *= self.cutoff.chi(&w);
                }
                TripleType::I => {
                    let w = curve.cross_ratio_nodal(0, i, j, m)?;
                    let chi = outer.chi(&w);
                    // a coordinate cross ratio entering the cutoff region
                    // while the data is alive violates the support
                    // condition on the data itself; non-coordinate type I
                    // ratios are legitimately killed by the factor
                    if chi > 0.0 && coordinate_violation.is_none() && is_coordinate(i, j, m) {
                        coordinate_violation = Some((i, j, m));
                    }
                    factor *= 1.0 - chi;
                }
                TripleType::III => {}
            }
        }
        let coords = self.coordinates(curve)?;
        let data_value = self.xi.eval(&coords);
        if let Some((i, j, m)) = coordinate_violation {
            if data_value.iter().any(|v| v.abs() > 0.0) {
                return Err(CoherentError::SupportViolation(i, j, m));
            }
        }
        let value = data_value.iter().map(|v| v * factor).collect();
        Ok(ExtensionValue {
            value,
            factor,
            data_value,
        })
    }
}

/// Smallest chordal clearance of the type I cross ratios of `dec` from
/// the degenerate values 0, 1, inf over the given curve. Data supported
/// where this clearance exceeds the outer cutoff radius satisfies the
/// support condition of the extension operators.
pub fn type_one_clearance(
    dec: &StableDecomposition,
    curve: &NodalCurve<f64>,
) -> Result<f64, CoherentError> {
    let mut min = f64::INFINITY;
    for (i, j, m) in StableDecomposition::triples(dec.k()) {
        if dec.triple_type(i, j, m)? == TripleType::I {
            let w = curve.cross_ratio_nodal(0, i, j, m)?;
            min = min.min(Cutoff::distance_to_degenerate(&w));
        }
    }
    Ok(min)
}

/// Marked points on the distinguished component, in class-minimum order:
/// the projection of an in-stratum curve to its normalized tuple.
pub fn project_to_stratum(
    curve: &NodalCurve<f64>,
    dec: &StableDecomposition,
) -> Result<Vec<ProjPoint<f64>>, CoherentError> {
    let alpha0 = curve
        .tree()
        .label_vertex(0)
        .ok_or(CurveError::MissingLabelZero)?;
    let mut points = Vec::with_capacity(dec.len());
    for &min_label in &dec.minima() {
        points.push(curve.resolve(alpha0, min_label)?.clone());
    }
    Ok(points)
}

/// The cross-ratio coordinates of an explicit point tuple
/// (`w(p0, p1, p2, pj)` for `j >= 3`).
pub fn tuple_coordinates(points: &[ProjPoint<f64>]) -> Result<Vec<ProjPoint<f64>>, CoherentError> {
    let mut out = Vec::new();
    for j in 3..points.len() {
        out.push(crate::curve::cross_ratio(
            &points[0], &points[1], &points[2], &points[j], 1e-12,
        )?);
    }
    Ok(out)
}

/// A coherent map assembled from per-vertex stratum data over one
/// labelled tree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoherentMapModel {
    pub tree_vertices: Vec<VertexId>,
    pub tree_edges: Vec<(VertexId, VertexId)>,
    pub tree_labels: Vec<(Label, VertexId)>,
    pub target_dim: usize,
    pub terms: Vec<ModelTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelTerm {
    pub vertex: VertexId,
    pub operator: ExtensionOperator,
}

impl CoherentMapModel {
    pub fn new(tree: &LabelledTree, target_dim: usize) -> Self {
        Self {
            tree_vertices: tree.vertices().collect(),
            tree_edges: tree.edges().collect(),
            tree_labels: tree.labels().collect(),
            target_dim,
            terms: Vec::new(),
        }
    }

    pub fn tree(&self) -> Result<LabelledTree, CoherentError> {
        Ok(LabelledTree::new(
            self.tree_vertices.iter().copied(),
            self.tree_edges.iter().copied(),
            self.tree_labels.iter().copied(),
        )?)
    }

    /// Attach stratum data at a vertex whose induced decomposition has at
    /// least 4 parts.
    pub fn add_term(
        &mut self,
        vertex: VertexId,
        cutoff: Cutoff,
        xi: XiFunction,
    ) -> Result<(), CoherentError> {
        if xi.dim() != self.target_dim {
            return Err(CoherentError::BadArity {
                expected: self.target_dim,
                got: xi.dim(),
            });
        }
        let tree = self.tree()?;
        let dec = induced_decomposition(&tree, vertex)?;
        let operator = ExtensionOperator::new(&dec, cutoff, xi)?;
        self.terms.push(ModelTerm { vertex, operator });
        Ok(())
    }

    /// The assembled global value: the sum of all extension terms.
    pub fn evaluate(&self, curve: &NodalCurve<f64>) -> Result<Vec<f64>, CoherentError> {
        let mut acc = vec![0.0; self.target_dim];
        for term in &self.terms {
            let v = term.operator.evaluate(curve)?;
            for (a, b) in acc.iter_mut().zip(&v.value) {
                *a += b;
            }
        }
        Ok(acc)
    }

    /// Collapse a subtree: remove all but the smallest marked point on it,
    /// stabilize, and keep only the stratum data attached to surviving
    /// vertices. The induced map agrees with the original away from the
    /// collapsed part and vanishes where the extra marked point sits over
    /// it.
    pub fn collapse_subtree(
        &self,
        subtree: &BTreeSet<VertexId>,
    ) -> Result<CoherentMapModel, CoherentError> {
        let tree = self.tree()?;
        for &v in subtree {
            if !tree.contains_vertex(v) {
                return Err(CoherentError::NoSuchVertex(v));
            }
        }
        if subtree.is_empty() {
            return Ok(self.clone());
        }
        if !is_connected_in(&tree, subtree) {
            return Err(CoherentError::SubtreeNotConnected);
        }
        let on_subtree: BTreeSet<Label> = tree
            .labels()
            .filter(|(_, v)| subtree.contains(v))
            .map(|(l, _)| l)
            .collect();
        // the smallest label on the subtree survives; the rest are removed
        let removed: BTreeSet<Label> = on_subtree.iter().skip(1).copied().collect();

        // relabel: old -> new, skipping removed labels
        let survivors: Vec<Label> = (1..=tree.max_label())
            .filter(|l| !removed.contains(l))
            .collect();
        let relabel = |old: Label| -> Label {
            if old == 0 {
                return 0;
            }
            survivors.iter().position(|&l| l == old).unwrap() as Label + 1
        };

        let stripped = LabelledTree::new(
            tree.vertices(),
            tree.edges(),
            tree.labels()
                .filter(|(l, _)| !removed.contains(l))
                .map(|(l, v)| (relabel(l), v)),
        )?;
        let (collapsed_tree, morphism) = stripped.stabilize()?;

        let mut model = CoherentMapModel::new(&collapsed_tree, self.target_dim);
        for term in &self.terms {
            if subtree.contains(&term.vertex) {
                continue; // the extra marked point sits over the collapsed part
            }
            // vertices outside the subtree survive stabilization unchanged
            let image = morphism.apply(term.vertex).unwrap_or(term.vertex);
            if !collapsed_tree.contains_vertex(image) {
                continue;
            }
            let dec = term.operator.decomposition.to_decomposition()?;
            let new_parts: Vec<Vec<Label>> = dec
                .parts()
                .map(|p| {
                    p.iter()
                        .filter(|l| !removed.contains(l))
                        .map(|&l| relabel(l))
                        .collect::<Vec<Label>>()
                })
                .filter(|p: &Vec<Label>| !p.is_empty())
                .collect();
            let new_dec = StableDecomposition::new(new_parts, collapsed_tree.max_label())?;
            let operator = ExtensionOperator::new(
                &new_dec,
                term.operator.cutoff.clone(),
                term.operator.xi.clone(),
            )?;
            model.terms.push(ModelTerm {
                vertex: image,
                operator,
            });
        }
        Ok(model)
    }
}

fn is_connected_in(tree: &LabelledTree, set: &BTreeSet<VertexId>) -> bool {
    let Some(&start) = set.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in tree.neighbors(v) {
            if set.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}
