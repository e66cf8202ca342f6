//! JSON wire formats for trees, weighted trees, and nodal curves.
//!
//! Trees travel as
//! `{"k": 5, "vertices": [0, 1], "edges": [[0, 1]], "labels": {"1": 0, ...},
//!   "weights": {"0": [1, 0], ...}}`
//! with weights optional. Curves extend the tree object with
//! `"nodal_points": [{"edge": [a, b], "point": [re, im]}]` (one entry per
//! directed edge) and `"marked_points": {"1": [re, im], ...}`; the point at
//! infinity is the string `"inf"`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::curve::{CurveError, NodalCurve, ProjPoint};
use crate::tree::{Label, LabelledTree, TreeError, VertexId, WeightedTree};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("label key {0:?} is not an integer")]
    BadLabelKey(String),
    #[error("vertex key {0:?} is not an integer")]
    BadVertexKey(String),
    #[error("k = {declared} does not match the largest label present ({found})")]
    KMismatch { declared: u32, found: usize },
    #[error("weights are required for this operation")]
    MissingWeights,
    #[error("pairing row has length {got}, expected {expected}")]
    BadPairingRow { expected: usize, got: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeJson {
    pub k: u32,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub labels: BTreeMap<String, VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, Vec<i64>>>,
}

impl TreeJson {
    pub fn parse(input: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(input)?)
    }

    pub fn to_tree(&self) -> Result<LabelledTree, JsonError> {
        let mut labels = Vec::new();
        for (key, &v) in &self.labels {
            let l: Label = key
                .parse()
                .map_err(|_| JsonError::BadLabelKey(key.clone()))?;
            labels.push((l, v));
        }
        let tree = LabelledTree::new(
            self.vertices.iter().copied(),
            self.edges.iter().copied(),
            labels,
        )?;
        // k counts the ordinary marked points: labels run 1..=k, or 0..=k
        // when the distinguished extra point is present
        let found = tree.max_label() as usize;
        if self.k as usize != found {
            return Err(JsonError::KMismatch {
                declared: self.k,
                found,
            });
        }
        Ok(tree)
    }

    pub fn to_weighted(
        &self,
        omega_row: Vec<i64>,
        c1_row: Vec<i64>,
    ) -> Result<WeightedTree, JsonError> {
        let tree = self.to_tree()?;
        let raw = self.weights.as_ref().ok_or(JsonError::MissingWeights)?;
        let mut weights = Vec::new();
        for (key, w) in raw {
            let v: VertexId = key
                .parse()
                .map_err(|_| JsonError::BadVertexKey(key.clone()))?;
            weights.push((v, w.clone()));
        }
        Ok(WeightedTree::new(tree, weights, omega_row, c1_row)?)
    }

    pub fn from_tree(tree: &LabelledTree) -> Self {
        Self {
            k: tree.max_label(),
            vertices: tree.vertices().collect(),
            edges: tree.edges().collect(),
            labels: tree
                .labels()
                .map(|(l, v)| (l.to_string(), v))
                .collect(),
            weights: None,
        }
    }
}

/// A sphere point: `[re, im]` or `"inf"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PointJson {
    Finite([f64; 2]),
    Symbol(String),
}

impl PointJson {
    pub fn to_point(&self) -> Result<ProjPoint<f64>, JsonError> {
        match self {
            PointJson::Finite([re, im]) => Ok(ProjPoint::finite(Complex64::new(*re, *im))),
            PointJson::Symbol(s) if s == "inf" => Ok(ProjPoint::infinity()),
            PointJson::Symbol(s) => Err(JsonError::BadLabelKey(s.clone())),
        }
    }

    pub fn from_point(p: &ProjPoint<f64>) -> Self {
        match p.value(1e-12) {
            Some(z) => PointJson::Finite([z.re, z.im]),
            None => PointJson::Symbol("inf".to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodalPointJson {
    pub edge: (VertexId, VertexId),
    pub point: PointJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveJson {
    #[serde(flatten)]
    pub tree: TreeJson,
    #[serde(default)]
    pub nodal_points: Vec<NodalPointJson>,
    pub marked_points: BTreeMap<String, PointJson>,
}

impl CurveJson {
    pub fn parse(input: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(input)?)
    }

    pub fn to_curve(&self, tol: f64) -> Result<NodalCurve<f64>, JsonError> {
        let tree = self.tree.to_tree()?;
        let mut nodal = BTreeMap::new();
        for np in &self.nodal_points {
            nodal.insert(np.edge, np.point.to_point()?);
        }
        let mut marked = BTreeMap::new();
        for (key, p) in &self.marked_points {
            let l: Label = key
                .parse()
                .map_err(|_| JsonError::BadLabelKey(key.clone()))?;
            marked.insert(l, p.to_point()?);
        }
        Ok(NodalCurve::new(tree, nodal, marked, tol)?)
    }

    pub fn from_curve(curve: &NodalCurve<f64>) -> Self {
        let tree = TreeJson::from_tree(curve.tree());
        let mut nodal_points = Vec::new();
        for (a, b) in curve.tree().edges() {
            for (x, y) in [(a, b), (b, a)] {
                nodal_points.push(NodalPointJson {
                    edge: (x, y),
                    point: PointJson::from_point(curve.nodal_point(x, y).unwrap()),
                });
            }
        }
        let marked_points = curve
            .tree()
            .labels()
            .map(|(l, _)| {
                (
                    l.to_string(),
                    PointJson::from_point(curve.marked_point(l).unwrap()),
                )
            })
            .collect();
        Self {
            tree,
            nodal_points,
            marked_points,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_round_trip() {
        let json = r#"{"k":3,"vertices":[0,1],"edges":[[0,1]],"labels":{"1":0,"2":0,"3":1}}"#;
        let tree = TreeJson::parse(json).unwrap().to_tree().unwrap();
        assert_eq!(tree.num_marked(), 3);
        assert_eq!(tree.edge_count(), 1);
        let back = TreeJson::from_tree(&tree);
        let again = back.to_tree().unwrap();
        assert!(tree.is_isomorphic(&again));
    }

    #[test]
    fn k_mismatch_rejected() {
        let json = r#"{"k":4,"vertices":[0],"edges":[],"labels":{"1":0,"2":0,"3":0}}"#;
        assert!(matches!(
            TreeJson::parse(json).unwrap().to_tree(),
            Err(JsonError::KMismatch { .. })
        ));
    }

    #[test]
    fn weighted_tree_parses() {
        let json = r#"{"k":3,"vertices":[0,1],"edges":[[0,1]],
                       "labels":{"1":0,"2":0,"3":1},
                       "weights":{"0":[1,0],"1":[0,0]}}"#;
        let w = TreeJson::parse(json)
            .unwrap()
            .to_weighted(vec![1, 2], vec![3, 0])
            .unwrap();
        assert_eq!(w.total_omega(), 1);
        assert_eq!(w.ghost_forest().len(), 1);
    }

    #[test]
    fn curve_round_trip_with_infinity() {
        let json = r#"{
            "k": 3, "vertices": [0, 1], "edges": [[0, 1]],
            "labels": {"1": 0, "2": 1, "3": 1},
            "nodal_points": [
                {"edge": [0, 1], "point": [0.0, 0.0]},
                {"edge": [1, 0], "point": "inf"}
            ],
            "marked_points": {"1": [1.0, 0.0], "2": [0.5, -0.25], "3": [2.0, 2.0]}
        }"#;
        let curve = CurveJson::parse(json).unwrap().to_curve(1e-12).unwrap();
        assert!(curve.nodal_point(1, 0).unwrap().is_infinity(1e-12));
        let back = CurveJson::from_curve(&curve);
        let round = back.to_curve(1e-12).unwrap();
        assert!(round.nodal_point(1, 0).unwrap().is_infinity(1e-12));
        assert!(round
            .marked_point(2)
            .unwrap()
            .coincides(curve.marked_point(2).unwrap(), 1e-12));
    }
}
