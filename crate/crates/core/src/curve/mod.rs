//! Nodal genus-zero curves over labelled trees and the cross-ratio calculus
//! on them.

mod cross_ratio;
mod decomposition;
mod normalize;
mod point;

pub use cross_ratio::{cross_ratio, is_degenerate_value};
pub use decomposition::{
    all_stable_decompositions, witness_nonrefinement, witness_refinement, StableDecomposition,
    TripleType,
};
pub use normalize::{is_normalized, normalization_order, normalize_component};
pub use point::{CurveScalar, Mobius, ProjPoint, DEFAULT_POINT_TOL};

use std::collections::BTreeMap;
use thiserror::Error;

use crate::tree::{Label, LabelledTree, TreeError, VertexId};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CurveError {
    #[error("three or more of the four points coincide; cross ratio undefined")]
    CoincidentPoints,
    #[error("special points on component {0} are not pairwise distinct")]
    SpecialPointsCollide(VertexId),
    #[error("missing nodal point for directed edge ({0}, {1})")]
    MissingNodalPoint(VertexId, VertexId),
    #[error("missing marked point for label {0}")]
    MissingMarkedPoint(Label),
    #[error("label {0} out of range")]
    LabelOutOfRange(Label),
    #[error("curve has no marked point 0")]
    MissingLabelZero,
    #[error("no component admits the cross ratio (every vertex sees three coincident points)")]
    NoEvaluationVertex,
    #[error("cross-ratio evaluation is ambiguous across components")]
    AmbiguousEvaluation,
    #[error("component {0} carries fewer than 3 special points; normalization not unique")]
    TooFewSpecialPoints(VertexId),
    #[error("underlying curve is not stable")]
    Unstable,
    #[error("decomposition is not a partition of 0..=k")]
    NotAPartition,
    #[error("part containing 0 must be the singleton {{0}}")]
    ZeroPartNotSingleton,
    #[error("stable decompositions need at least 3 parts, got {0}")]
    TooFewParts(usize),
    #[error("triple indices must be distinct and within 1..=k")]
    BadTriple,
    #[error("witness hypothesis violated: {0}")]
    WitnessHypothesis(&'static str),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// The special points on one component: a marked point label or the node
/// towards a neighboring component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpecialPoint {
    Marked(Label),
    Node(VertexId),
}

/// A nodal curve: spheres indexed by tree vertices, glued at nodal points,
/// with marked points distributed by the tree's labels.
#[derive(Debug, Clone)]
pub struct NodalCurve<F> {
    tree: LabelledTree,
    nodal: BTreeMap<(VertexId, VertexId), ProjPoint<F>>,
    marked: BTreeMap<Label, ProjPoint<F>>,
    tol: f64,
}

impl<F: CurveScalar> NodalCurve<F> {
    /// Build and validate: every directed edge needs a nodal point, every
    /// label a marked point, and the special points on each component must
    /// be pairwise distinct.
    pub fn new(
        tree: LabelledTree,
        nodal: BTreeMap<(VertexId, VertexId), ProjPoint<F>>,
        marked: BTreeMap<Label, ProjPoint<F>>,
        tol: f64,
    ) -> Result<Self, CurveError> {
        for (a, b) in tree.edges() {
            for (x, y) in [(a, b), (b, a)] {
                if !nodal.contains_key(&(x, y)) {
                    return Err(CurveError::MissingNodalPoint(x, y));
                }
            }
        }
        for (l, _) in tree.labels() {
            if !marked.contains_key(&l) {
                return Err(CurveError::MissingMarkedPoint(l));
            }
        }
        let curve = Self {
            tree,
            nodal,
            marked,
            tol,
        };
        for v in curve.tree.vertices() {
            let pts = curve.special_points(v);
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    if pts[i].1.coincides(pts[j].1, curve.tol) {
                        return Err(CurveError::SpecialPointsCollide(v));
                    }
                }
            }
        }
        Ok(curve)
    }

    /// A smooth curve: one component carrying all the marked points.
    pub fn smooth(
        points: Vec<ProjPoint<F>>,
        first_label: Label,
        tol: f64,
    ) -> Result<Self, CurveError> {
        let k = points.len() as Label;
        let tree = LabelledTree::new([0], [], (0..k).map(|i| (first_label + i, 0)))?;
        let marked = points
            .into_iter()
            .enumerate()
            .map(|(i, p)| (first_label + i as Label, p))
            .collect();
        Self::new(tree, BTreeMap::new(), marked, tol)
    }

    pub fn tree(&self) -> &LabelledTree {
        &self.tree
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn marked_point(&self, label: Label) -> Option<&ProjPoint<F>> {
        self.marked.get(&label)
    }

    pub fn nodal_point(&self, from: VertexId, to: VertexId) -> Option<&ProjPoint<F>> {
        self.nodal.get(&(from, to))
    }

    pub fn is_stable(&self) -> bool {
        self.tree.is_stable()
    }

    /// Special points on the component `v`, marked points first (ascending
    /// label), then nodal points (ascending neighbor id).
    pub fn special_points(&self, v: VertexId) -> Vec<(SpecialPoint, &ProjPoint<F>)> {
        let mut pts: Vec<(SpecialPoint, &ProjPoint<F>)> = self
            .tree
            .labels_at(v)
            .map(|l| (SpecialPoint::Marked(l), &self.marked[&l]))
            .collect();
        for w in self.tree.neighbors(v) {
            pts.push((SpecialPoint::Node(w), &self.nodal[&(v, w)]));
        }
        pts
    }

    /// `z_{v,i}`: the marked point `z_i` if label `i` lives on `v`,
    /// otherwise the nodal point on `v` in the direction of `i`'s component.
    pub fn resolve(&self, v: VertexId, label: Label) -> Result<&ProjPoint<F>, CurveError> {
        let target = self
            .tree
            .label_vertex(label)
            .ok_or(CurveError::LabelOutOfRange(label))?;
        if target == v {
            return Ok(&self.marked[&label]);
        }
        let step = self
            .tree
            .step_toward(v, target)?
            .expect("distinct vertices have a first step");
        Ok(&self.nodal[&(v, step)])
    }

    /// Cross ratio `w_{ijmn}` on a stable nodal curve: evaluate at the
    /// component(s) where no three of the resolved points coincide. All
    /// admissible components are required to agree (they do on any valid
    /// stable curve; disagreement reports an ambiguity instead of guessing).
    pub fn cross_ratio_nodal(
        &self,
        i: Label,
        j: Label,
        m: Label,
        n: Label,
    ) -> Result<ProjPoint<F>, CurveError> {
        if !self.is_stable() {
            return Err(CurveError::Unstable);
        }
        let mut value: Option<ProjPoint<F>> = None;
        for v in self.tree.vertices() {
            let pts = [
                self.resolve(v, i)?,
                self.resolve(v, j)?,
                self.resolve(v, m)?,
                self.resolve(v, n)?,
            ];
            if has_three_coincident(&pts, self.tol) {
                continue;
            }
            let w = cross_ratio(pts[0], pts[1], pts[2], pts[3], self.tol)?;
            match &value {
                None => value = Some(w),
                Some(prev) => {
                    if !prev.coincides(&w, self.tol.max(1e-9)) {
                        return Err(CurveError::AmbiguousEvaluation);
                    }
                }
            }
        }
        value.ok_or(CurveError::NoEvaluationVertex)
    }

    /// The partition of `{0..=k}` induced by where the marked points attach
    /// to the component of `z_0`.
    pub fn stable_decomposition(&self) -> Result<StableDecomposition, CurveError> {
        if self.tree.first_label() != 0 {
            return Err(CurveError::MissingLabelZero);
        }
        if !self.is_stable() {
            return Err(CurveError::Unstable);
        }
        let alpha0 = self.tree.label_vertex(0).unwrap();
        let k = self.tree.max_label();
        let mut classes: Vec<(ProjPoint<F>, Vec<Label>)> = Vec::new();
        'labels: for l in 0..=k {
            let p = self.resolve(alpha0, l)?.clone();
            for (rep, members) in classes.iter_mut() {
                if rep.coincides(&p, self.tol) {
                    members.push(l);
                    continue 'labels;
                }
            }
            classes.push((p, vec![l]));
        }
        StableDecomposition::new(classes.into_iter().map(|(_, m)| m), k)
    }
}

fn has_three_coincident<F: CurveScalar>(pts: &[&ProjPoint<F>; 4], tol: f64) -> bool {
    for a in 0..4 {
        for b in (a + 1)..4 {
            for c in (b + 1)..4 {
                if pts[a].coincides(pts[b], tol) && pts[b].coincides(pts[c], tol) {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use num_rational::BigRational;

    type Q = BigRational;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn pt(re: i64, im: i64) -> ProjPoint<Q> {
        ProjPoint::finite(Complex::new(qi(re), qi(im)))
    }

    /// Two components: alpha = {z0 at 0, z4 at 1, node at inf},
    /// beta = {z1 at 0, z2 at 1, z3 at 2, node at inf}.
    fn two_component() -> NodalCurve<Q> {
        let tree = LabelledTree::new(
            [0, 1],
            [(0, 1)],
            [(0, 0), (4, 0), (1, 1), (2, 1), (3, 1)],
        )
        .unwrap();
        let nodal = BTreeMap::from([
            ((0, 1), ProjPoint::infinity()),
            ((1, 0), ProjPoint::infinity()),
        ]);
        let marked = BTreeMap::from([
            (0, pt(0, 0)),
            (4, pt(1, 0)),
            (1, pt(0, 0)),
            (2, pt(1, 0)),
            (3, pt(2, 0)),
        ]);
        NodalCurve::new(tree, nodal, marked, 0.0).unwrap()
    }

    #[test]
    fn rejects_colliding_special_points() {
        let tree = LabelledTree::single_vertex(1, 3);
        let marked = BTreeMap::from([(1, pt(0, 0)), (2, pt(0, 0)), (3, pt(1, 0))]);
        let err = NodalCurve::new(tree, BTreeMap::new(), marked, 0.0).unwrap_err();
        assert_eq!(err, CurveError::SpecialPointsCollide(0));
    }

    #[test]
    fn one_vertex_cross_ratio_matches_direct() {
        let c = NodalCurve::smooth(vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)], 1, 0.0).unwrap();
        let nodal = c.cross_ratio_nodal(1, 2, 3, 4).unwrap();
        let direct = cross_ratio(&pt(0, 0), &pt(1, 0), &pt(2, 0), &pt(3, 0), 0.0).unwrap();
        assert!(nodal.coincides(&direct, 0.0));
    }

    #[test]
    fn resolution_follows_the_tree() {
        let c = two_component();
        assert!(c.resolve(0, 2).unwrap().is_infinity(0.0));
        assert!(c.resolve(1, 2).unwrap().coincides(&pt(1, 0), 0.0));
    }

    #[test]
    fn split_pair_cross_ratio_is_degenerate() {
        let c = two_component();
        // 0,4 on one component, 1,2 on the other
        let w = c.cross_ratio_nodal(0, 4, 1, 2).unwrap();
        assert!(is_degenerate_value(&w, 0.0));
    }

    #[test]
    fn multiple_admissible_components_agree() {
        // for w_{1,2,3,4} both components qualify; evaluation must not error
        let c = two_component();
        c.cross_ratio_nodal(1, 2, 3, 4).unwrap();
        c.cross_ratio_nodal(0, 1, 2, 3).unwrap();
    }

    #[test]
    fn stable_decomposition_one_vertex() {
        let c = NodalCurve::smooth(vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)], 0, 0.0).unwrap();
        let d = c.stable_decomposition().unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.parts().all(|p| p.len() == 1));
    }

    #[test]
    fn stable_decomposition_groups_far_labels() {
        let c = two_component();
        let d = c.stable_decomposition().unwrap();
        // I = ({0}, {1,2,3}, {4})
        let parts: Vec<Vec<Label>> = d.parts().map(|p| p.iter().copied().collect()).collect();
        assert_eq!(parts, vec![vec![0], vec![1, 2, 3], vec![4]]);
        assert_eq!(d.len(), c.tree().special_count(0));
    }
}
