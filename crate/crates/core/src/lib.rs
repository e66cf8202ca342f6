//! Combinatorics of genus-zero stable trees and nodal curves, cross-ratio
//! calculus on their moduli, Kähler-angle linear algebra for symplectic
//! hypersurfaces, local intersection numbers of holomorphic maps, and the
//! degree/index arithmetic attached to high-degree hypersurface pairs.
//!
//! Everything here is finite-dimensional and mostly exact: tree and
//! partition combinatorics use integers, cross ratios can be evaluated over
//! the Gaussian rationals, and the degree arithmetic is pure rational
//! arithmetic. The numerical parts (angles between subspaces, compatible
//! almost complex structures, winding numbers) are f64 with explicit
//! tolerances and seeded sampling.

pub mod angles;
pub mod coherent;
pub mod curve;
pub mod donaldson;
pub mod intersect;
pub mod json;
pub mod tree;
pub mod verify;

pub use tree::{LabelledTree, TreeError, TreeMorphism, WeightedTree};
