//! The edge-diagonal linear system on a rooted tree.
//!
//! Given vectors `v_{ab}` for each directed edge and a value `v_root` at
//! the root, find per-vertex vectors `xi_a` and per-edge vectors
//! `eta_{ab} = eta_{ba}` with
//!
//! ```text
//! xi_a + eta_{ab} = v_{ab},    xi_root = v_root.
//! ```
//!
//! On a tree the system is solved by induction over the distance from the
//! root: for a new vertex `b` reached through `a`, set
//! `eta_{ab} = v_{ab} - xi_a` and `xi_b = v_{ba} - eta_{ab}`. The solution
//! is exact whenever the scalar arithmetic is, and is unique once the root
//! value is fixed.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_traits::Zero;

use super::{LabelledTree, TreeError, VertexId};

/// Scalars the solver accepts: exact rationals, floats, or anything with
/// exact addition and subtraction.
pub trait EdgeScalar: Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Zero {}
impl<T: Clone + PartialEq + Add<Output = T> + Sub<Output = T> + Zero> EdgeScalar for T {}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSolution<S> {
    /// Per-vertex unknowns.
    pub xi: BTreeMap<VertexId, Vec<S>>,
    /// Per-undirected-edge unknowns, keyed by `(min, max)`.
    pub eta: BTreeMap<(VertexId, VertexId), Vec<S>>,
}

impl<S: EdgeScalar> EdgeSolution<S> {
    /// Residuals of every equation `xi_a + eta_{ab} - v_{ab}`; all zero for
    /// a valid solution in exact arithmetic.
    pub fn residuals(
        &self,
        tree: &LabelledTree,
        v_edge: &BTreeMap<(VertexId, VertexId), Vec<S>>,
    ) -> Vec<Vec<S>> {
        let mut out = Vec::new();
        for (a, b) in tree.edges() {
            for (from, to) in [(a, b), (b, a)] {
                let xi = &self.xi[&from];
                let eta = &self.eta[&(a, b)];
                let v = &v_edge[&(from, to)];
                out.push(
                    xi.iter()
                        .zip(eta)
                        .zip(v)
                        .map(|((x, e), v)| x.clone() + e.clone() - v.clone())
                        .collect(),
                );
            }
        }
        out
    }
}

pub fn solve_edge_system<S: EdgeScalar>(
    tree: &LabelledTree,
    root: VertexId,
    v_edge: &BTreeMap<(VertexId, VertexId), Vec<S>>,
    v_root: &[S],
) -> Result<EdgeSolution<S>, TreeError> {
    if !tree.contains_vertex(root) {
        return Err(TreeError::NoSuchVertex(root));
    }
    let dim = v_root.len();
    let fetch = |from: VertexId, to: VertexId| -> Result<&Vec<S>, TreeError> {
        let v = v_edge
            .get(&(from, to))
            .ok_or(TreeError::MissingEdgeData(from, to))?;
        if v.len() != dim {
            return Err(TreeError::EdgeVectorLength {
                expected: dim,
                got: v.len(),
            });
        }
        Ok(v)
    };

    let mut xi: BTreeMap<VertexId, Vec<S>> = BTreeMap::new();
    let mut eta: BTreeMap<(VertexId, VertexId), Vec<S>> = BTreeMap::new();
    xi.insert(root, v_root.to_vec());

    // BFS order = induction over distance from the root.
    let dist = tree.distances_from(root);
    let mut order: Vec<VertexId> = tree.vertices().collect();
    order.sort_by_key(|v| (dist[v], *v));
    for &b in &order {
        if b == root {
            continue;
        }
        let a = tree
            .neighbors(b)
            .find(|n| dist[n] + 1 == dist[&b])
            .expect("tree vertex has a parent towards the root");
        let v_ab = fetch(a, b)?;
        let v_ba = fetch(b, a)?;
        let xi_a = &xi[&a];
        let eta_ab: Vec<S> = v_ab
            .iter()
            .zip(xi_a)
            .map(|(v, x)| v.clone() - x.clone())
            .collect();
        let xi_b: Vec<S> = v_ba
            .iter()
            .zip(&eta_ab)
            .map(|(v, e)| v.clone() - e.clone())
            .collect();
        eta.insert((a.min(b), a.max(b)), eta_ab);
        xi.insert(b, xi_b);
    }
    Ok(EdgeSolution { xi, eta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn single_vertex() {
        let t = LabelledTree::single_vertex(1, 3);
        let sol = solve_edge_system::<BigRational>(&t, 0, &BTreeMap::new(), &[rat(7)]).unwrap();
        assert_eq!(sol.xi[&0], vec![rat(7)]);
        assert!(sol.eta.is_empty());
    }

    #[test]
    fn two_vertex_hand_solution() {
        // path 0 -- 1 with v_{01} = p, v_{10} = q:
        // eta = p - v_root, xi_1 = q - p + v_root
        let t = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 1)]).unwrap();
        let (p, q, r) = (rat(5), rat(11), rat(2));
        let v_edge = BTreeMap::from([((0, 1), vec![p.clone()]), ((1, 0), vec![q.clone()])]);
        let sol = solve_edge_system(&t, 0, &v_edge, std::slice::from_ref(&r)).unwrap();
        assert_eq!(sol.eta[&(0, 1)], vec![p.clone() - r.clone()]);
        assert_eq!(sol.xi[&1], vec![q - p + r]);
        for res in sol.residuals(&t, &v_edge) {
            assert!(res.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solution_depends_on_root_value() {
        let t = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 1)]).unwrap();
        let v_edge = BTreeMap::from([((0, 1), vec![rat(5)]), ((1, 0), vec![rat(11)])]);
        let a = solve_edge_system(&t, 0, &v_edge, &[rat(0)]).unwrap();
        let b = solve_edge_system(&t, 0, &v_edge, &[BigRational::one()]).unwrap();
        assert_ne!(a.xi[&1], b.xi[&1]);
    }

    #[test]
    fn float_mode_works() {
        let t = LabelledTree::new([0, 1, 2], [(0, 1), (0, 2)], [(1, 0), (2, 1), (3, 2)]).unwrap();
        let v_edge = BTreeMap::from([
            ((0, 1), vec![1.5f64]),
            ((1, 0), vec![-0.5]),
            ((0, 2), vec![2.0]),
            ((2, 0), vec![0.25]),
        ]);
        let sol = solve_edge_system(&t, 0, &v_edge, &[0.5]).unwrap();
        for res in sol.residuals(&t, &v_edge) {
            assert!(res.iter().all(|r| r.abs() < 1e-15));
        }
    }
}
