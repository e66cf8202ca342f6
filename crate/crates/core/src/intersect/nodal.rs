//! Local intersection indices of nodal polynomial maps at marked points,
//! including the ghost-tree convention.
//!
//! The target is `C^n` with the hypersurface `Y = C^{n-1} x {0}`. A nodal
//! map assigns each tree vertex either a constant value or a polynomial
//! disk map; edge evaluations must match across nodes. At a marked point
//! on a nonconstant component the index is the vanishing order of the
//! normal coordinate; at a marked point on a ghost tree it is the sum of
//! the indices of the adjacent nonconstant components at their attaching
//! nodes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;
use thiserror::Error;

use super::poly::{CPoly, CC};
use crate::tree::{Label, LabelledTree, TreeError, VertexId};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum NodalMapError {
    #[error("vertex {0} has no map data")]
    MissingComponent(VertexId),
    #[error("missing nodal point for directed edge ({0}, {1})")]
    MissingNodalPoint(VertexId, VertexId),
    #[error("missing marked point {0}")]
    MissingMarkedPoint(Label),
    #[error("edge ({0}, {1}) evaluations disagree")]
    EdgeMismatch(VertexId, VertexId),
    #[error("component {0} is declared polynomial but is constant")]
    DegeneratePolynomial(VertexId),
    #[error("components map into different ambient dimensions")]
    MixedAmbient,
    #[error("nonconstant component {0} lies inside the hypersurface")]
    ComponentInsideHypersurface(VertexId),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone)]
pub enum MapComponent {
    Constant(Vec<CC>),
    Polynomial(Vec<CPoly>),
}

impl MapComponent {
    fn ambient(&self) -> usize {
        match self {
            MapComponent::Constant(v) => v.len(),
            MapComponent::Polynomial(ps) => ps.len(),
        }
    }

    fn eval(&self, z: &CC) -> Vec<CC> {
        match self {
            MapComponent::Constant(v) => v.clone(),
            MapComponent::Polynomial(ps) => ps.iter().map(|p| p.eval(z)).collect(),
        }
    }

    fn is_ghost(&self) -> bool {
        matches!(self, MapComponent::Constant(_))
    }
}

/// A nodal polynomial map over a labelled tree, in one affine chart per
/// component.
#[derive(Debug, Clone)]
pub struct NodalAnalyticMap {
    tree: LabelledTree,
    components: BTreeMap<VertexId, MapComponent>,
    nodal_points: BTreeMap<(VertexId, VertexId), CC>,
    marked_points: BTreeMap<Label, CC>,
}

/// Index result at a marked point.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalIndex {
    pub value: usize,
    /// Set when the marked point sits on a ghost tree with no adjacent
    /// nonconstant component (the whole map is constant there); the index
    /// is reported as 0.
    pub isolated_ghost: bool,
}

impl NodalAnalyticMap {
    pub fn new(
        tree: LabelledTree,
        components: BTreeMap<VertexId, MapComponent>,
        nodal_points: BTreeMap<(VertexId, VertexId), CC>,
        marked_points: BTreeMap<Label, CC>,
    ) -> Result<Self, NodalMapError> {
        let mut ambient = None;
        for v in tree.vertices() {
            let c = components
                .get(&v)
                .ok_or(NodalMapError::MissingComponent(v))?;
            match ambient {
                None => ambient = Some(c.ambient()),
                Some(n) if n != c.ambient() => return Err(NodalMapError::MixedAmbient),
                _ => {}
            }
            if let MapComponent::Polynomial(ps) = c {
                if ps.iter().all(|p| p.degree().unwrap_or(0) == 0) {
                    return Err(NodalMapError::DegeneratePolynomial(v));
                }
                // the normal coordinate must not vanish identically
                if ps.last().is_some_and(CPoly::is_zero) {
                    return Err(NodalMapError::ComponentInsideHypersurface(v));
                }
            }
        }
        for (l, _) in tree.labels() {
            if !marked_points.contains_key(&l) {
                return Err(NodalMapError::MissingMarkedPoint(l));
            }
        }
        for (a, b) in tree.edges() {
            let za = nodal_points
                .get(&(a, b))
                .ok_or(NodalMapError::MissingNodalPoint(a, b))?;
            let zb = nodal_points
                .get(&(b, a))
                .ok_or(NodalMapError::MissingNodalPoint(b, a))?;
            let va = components[&a].eval(za);
            let vb = components[&b].eval(zb);
            if va != vb {
                return Err(NodalMapError::EdgeMismatch(a, b));
            }
        }
        Ok(Self {
            tree,
            components,
            nodal_points,
            marked_points,
        })
    }

    pub fn tree(&self) -> &LabelledTree {
        &self.tree
    }

    fn is_ghost(&self, v: VertexId) -> bool {
        self.components[&v].is_ghost()
    }

    /// Maximal ghost subtree containing `v`.
    fn ghost_tree_of(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for w in self.tree.neighbors(u) {
                if self.is_ghost(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn normal_poly(&self, v: VertexId) -> &CPoly {
        match &self.components[&v] {
            MapComponent::Polynomial(ps) => ps.last().expect("nonempty ambient"),
            MapComponent::Constant(_) => unreachable!("ghost components have no normal poly"),
        }
    }

    /// Local intersection index with `Y = C^{n-1} x {0}` at the marked
    /// point `label`.
    pub fn local_index_at(&self, label: Label) -> Result<LocalIndex, NodalMapError> {
        let v = self
            .tree
            .label_vertex(label)
            .ok_or(NodalMapError::MissingMarkedPoint(label))?;
        let z = self.marked_points[&label].clone();
        if !self.is_ghost(v) {
            let h = self.normal_poly(v);
            let value = if h.eval(&z).is_zero() {
                h.vanishing_order(&z).unwrap_or(0)
            } else {
                0
            };
            return Ok(LocalIndex {
                value,
                isolated_ghost: false,
            });
        }
        // ghost tree: the constant must lie on Y for an intersection
        let ghost_value = self.components[&v].eval(&z);
        if !ghost_value.last().is_some_and(Zero::is_zero) {
            return Ok(LocalIndex {
                value: 0,
                isolated_ghost: false,
            });
        }
        let ghost = self.ghost_tree_of(v);
        let mut total = 0usize;
        let mut adjacent_any = false;
        for &g in &ghost {
            for b in self.tree.neighbors(g) {
                if ghost.contains(&b) {
                    continue;
                }
                adjacent_any = true;
                let attach = &self.nodal_points[&(b, g)];
                let h = self.normal_poly(b);
                total += h.vanishing_order(attach).unwrap_or(0);
            }
        }
        Ok(LocalIndex {
            value: total,
            isolated_ghost: !adjacent_any,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::poly::cc;
    use num_traits::One;

    fn z_pow(p: usize) -> CPoly {
        CPoly::monomial(CC::one(), p)
    }

    /// One nonconstant component: f(z) = (z, z^2), marked point 1 at 0.
    #[test]
    fn plain_component_index() {
        let tree = LabelledTree::new([0], [], [(1, 0), (2, 0), (3, 0)]).unwrap();
        let comps = BTreeMap::from([(0, MapComponent::Polynomial(vec![z_pow(1), z_pow(2)]))]);
        let marked = BTreeMap::from([(1, cc(0, 0)), (2, cc(1, 0)), (3, cc(2, 0))]);
        let map = NodalAnalyticMap::new(tree, comps, BTreeMap::new(), marked).unwrap();
        assert_eq!(
            map.local_index_at(1).unwrap(),
            LocalIndex {
                value: 2,
                isolated_ghost: false
            }
        );
        // marked point off Y
        assert_eq!(map.local_index_at(2).unwrap().value, 0);
    }

    /// Ghost vertex between two nonconstant ones: the index at its marked
    /// point adds the adjacent orders.
    #[test]
    fn ghost_tree_index_is_additive() {
        // chain 0 -- 1 -- 2, middle is the ghost at the origin of C^2
        let tree = LabelledTree::new(
            [0, 1, 2],
            [(0, 1), (1, 2)],
            [(1, 1), (2, 0), (3, 0), (4, 2), (5, 2)],
        )
        .unwrap();
        let comps = BTreeMap::from([
            // f_0(z) = (z, z^2): order 2 at z = 0
            (0, MapComponent::Polynomial(vec![z_pow(1), z_pow(2)])),
            (1, MapComponent::Constant(vec![cc(0, 0), cc(0, 0)])),
            // f_2(z) = (z, z^3): order 3 at z = 0
            (2, MapComponent::Polynomial(vec![z_pow(1), z_pow(3)])),
        ]);
        let nodal = BTreeMap::from([
            ((0, 1), cc(0, 0)),
            ((1, 0), cc(5, 0)),
            ((1, 2), cc(7, 0)),
            ((2, 1), cc(0, 0)),
        ]);
        let marked = BTreeMap::from([
            (1, cc(1, 0)),
            (2, cc(2, 0)),
            (3, cc(3, 0)),
            (4, cc(1, 0)),
            (5, cc(2, 0)),
        ]);
        let map = NodalAnalyticMap::new(tree, comps, nodal, marked).unwrap();
        let idx = map.local_index_at(1).unwrap();
        assert_eq!(idx.value, 2 + 3);
        assert!(!idx.isolated_ghost);
    }

    #[test]
    fn whole_tree_ghost_reports_warning() {
        let tree = LabelledTree::new([0], [], [(1, 0), (2, 0), (3, 0)]).unwrap();
        let comps = BTreeMap::from([(0, MapComponent::Constant(vec![cc(3, 0), cc(0, 0)]))]);
        let marked = BTreeMap::from([(1, cc(0, 0)), (2, cc(1, 0)), (3, cc(2, 0))]);
        let map = NodalAnalyticMap::new(tree, comps, BTreeMap::new(), marked).unwrap();
        let idx = map.local_index_at(1).unwrap();
        assert_eq!(idx.value, 0);
        assert!(idx.isolated_ghost);
    }

    #[test]
    fn edge_mismatch_rejected() {
        let tree = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 1)]).unwrap();
        let comps = BTreeMap::from([
            (0, MapComponent::Polynomial(vec![z_pow(1), z_pow(1)])),
            (1, MapComponent::Constant(vec![cc(9, 0), cc(9, 0)])),
        ]);
        let nodal = BTreeMap::from([((0, 1), cc(0, 0)), ((1, 0), cc(0, 0))]);
        let marked = BTreeMap::from([(1, cc(1, 0)), (2, cc(1, 0))]);
        let err = NodalAnalyticMap::new(tree, comps, nodal, marked).unwrap_err();
        assert_eq!(err, NodalMapError::EdgeMismatch(0, 1));
    }

    #[test]
    fn component_inside_hypersurface_rejected() {
        let tree = LabelledTree::new([0], [], [(1, 0)]).unwrap();
        let comps = BTreeMap::from([(0, MapComponent::Polynomial(vec![z_pow(1), CPoly::zero()]))]);
        let marked = BTreeMap::from([(1, cc(0, 0))]);
        let err = NodalAnalyticMap::new(tree, comps, BTreeMap::new(), marked).unwrap_err();
        assert_eq!(err, NodalMapError::ComponentInsideHypersurface(0));
    }
}
