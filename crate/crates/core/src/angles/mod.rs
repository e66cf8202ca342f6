//! Linear algebra of the standard Hermitian structure on `R^{2n}`:
//! Kähler angles of oriented subspaces, maximal/minimal angles, taming
//! margins of skew forms, constructions of compatible almost complex
//! structures preserving one or two codimension-2 subspaces, and the
//! canonical path between compatible structures.
//!
//! Coordinates are ordered `(x_1, y_1, ..., x_n, y_n)`; the standard
//! complex structure acts blockwise by `(x, y) -> (-y, x)`, the metric is
//! euclidean, and `omega(u, v) = <Ju, v>`, so `g = omega(., J.)`.

mod construct;
mod kahler;
mod margins;
mod path;
mod space;
mod subspace;

pub use construct::{construct_k_codim2, construct_k_pair, op_norm, restricted_norm_diff, KPairDiagnostics};
pub use kahler::{kahler_angle, kernel_angle, kernel_angle_direct};
pub use margins::{mc_alpha, mc_beta, tames, taming_margin, SkewForm, TamingMargin};
pub use path::{canonical_path, compatible_from_metric};
pub use space::{complex_to_real, hermitian_pairing, omega_matrix, standard_j, HermitianSpace};
pub use subspace::{max_angle, min_angle, nu, principal_angles, OrientedSubspace};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum AngleError {
    #[error("subspace must have even dimension, got {0}")]
    OddDimension(usize),
    #[error("basis is rank deficient (rank {rank} < {cols} columns)")]
    RankDeficient { rank: usize, cols: usize },
    #[error("zero subspace not allowed")]
    ZeroSubspace,
    #[error("matrix must be {0}x{0}, got {1}x{2}")]
    BadShape(usize, usize, usize),
    #[error("form is not antisymmetric")]
    NotAntisymmetric,
    #[error("zero form has no taming margin")]
    ZeroForm,
    #[error("matrix is not an almost complex structure (|K^2 + 1| = {0:.3e})")]
    NotAlmostComplex(f64),
    #[error("structure is not compatible with omega (residual {0:.3e})")]
    NotCompatible(f64),
    #[error("subspace is not symplectic (Kähler angle {0:.6} >= pi/2)")]
    NotSymplectic(f64),
    #[error("kernel map is not surjective (a and b are unimodular multiples)")]
    NotSurjective,
    #[error("zero map not allowed")]
    ZeroMap,
    #[error("subspaces are not transverse enough (minimal angle {got:.3e} < {need:.3e})")]
    NotTransverse { got: f64, need: f64 },
    #[error("projected basis is degenerate (least singular value {0:.3e})")]
    DegenerateBasis(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Default absolute tolerance for angle comparisons and residual checks.
pub const DEFAULT_ANGLE_TOL: f64 = 1e-9;
