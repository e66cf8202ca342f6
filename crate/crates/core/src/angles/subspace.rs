//! Oriented subspaces, principal angles, and the maximal/minimal angle.

use nalgebra::{DMatrix, DVector};

use super::space::standard_j;
use super::AngleError;

const RANK_TOL: f64 = 1e-10;

/// A linear subspace of `R^{2n}` with an orientation, stored as an
/// orthonormal basis whose column order realizes the orientation.
#[derive(Debug, Clone)]
pub struct OrientedSubspace {
    basis: DMatrix<f64>,
}

impl OrientedSubspace {
    /// Orthonormalize the given basis columns (stable Gram-Schmidt, which
    /// preserves the orientation) and keep the result. Rank-deficient
    /// input is rejected.
    pub fn new(basis: DMatrix<f64>) -> Result<Self, AngleError> {
        if basis.ncols() == 0 {
            return Err(AngleError::ZeroSubspace);
        }
        let q = orthonormalize(&basis).ok_or(AngleError::RankDeficient {
            rank: rank_of(&basis),
            cols: basis.ncols(),
        })?;
        Ok(Self { basis: q })
    }

    pub fn from_columns(ambient_dim: usize, cols: &[DVector<f64>]) -> Result<Self, AngleError> {
        let mut m = DMatrix::zeros(ambient_dim, cols.len());
        for (i, c) in cols.iter().enumerate() {
            m.set_column(i, c);
        }
        Self::new(m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthonormal, orientation-realizing basis.
    pub fn onb(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// The same subspace with reversed orientation (first two columns
    /// swapped; for a line, the column negated).
    pub fn reversed(&self) -> Self {
        let mut b = self.basis.clone();
        if b.ncols() >= 2 {
            b.swap_columns(0, 1);
        } else {
            let c = -b.column(0);
            b.set_column(0, &c);
        }
        Self { basis: b }
    }

    /// Image under the standard complex structure, orientation transported.
    pub fn j_image(&self) -> Self {
        let j = standard_j(self.ambient_dim() / 2);
        Self {
            basis: &j * &self.basis,
        }
    }

    /// Orthogonal complement; orientation chosen so that
    /// `self (+) complement` carries the standard orientation.
    pub fn orthogonal_complement(&self) -> Result<Self, AngleError> {
        let n = self.ambient_dim();
        let m = self.dim();
        if m == n {
            return Err(AngleError::ZeroSubspace);
        }
        let comp = nullspace(&self.basis.transpose());
        debug_assert_eq!(comp.ncols(), n - m);
        let mut full = DMatrix::zeros(n, n);
        full.view_mut((0, 0), (n, m)).copy_from(&self.basis);
        full.view_mut((0, m), (n, n - m)).copy_from(&comp);
        let mut out = Self { basis: comp };
        if full.determinant() < 0.0 {
            out = out.reversed();
        }
        Ok(out)
    }

    /// Symplectic orthogonal complement `W^omega = (J W)^perp`, orientation
    /// as produced by the complement construction applied to `JW`.
    pub fn omega_complement(&self) -> Result<Self, AngleError> {
        self.j_image().orthogonal_complement()
    }

    /// Membership test up to tolerance.
    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        let proj = &self.basis * (self.basis.transpose() * v);
        (v - proj).norm() <= tol * v.norm().max(1.0)
    }

    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * v)
    }
}

/// Principal angles between two subspaces, ascending, one per dimension of
/// the smaller space.
pub fn principal_angles(x: &OrientedSubspace, y: &OrientedSubspace) -> Vec<f64> {
    let m = x.onb().transpose() * y.onb();
    let mut svals: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    svals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    svals
        .into_iter()
        .map(|s| s.clamp(-1.0, 1.0).acos())
        .collect()
}

/// Maximal angle `sup_{y in Y} inf_{x in X} angle(x, y)`: the worst
/// approximation of a direction of `Y` by the subspace `X`. Equals `pi/2`
/// when `dim Y > dim X` and `0` iff `Y` is contained in `X`.
pub fn max_angle(x: &OrientedSubspace, y: &OrientedSubspace) -> f64 {
    if y.dim() > x.dim() {
        return std::f64::consts::FRAC_PI_2;
    }
    let m = x.onb().transpose() * y.onb();
    let svals = m.svd(false, false).singular_values;
    // the smallest of dim(Y) singular values controls the worst direction
    let smallest = svals.iter().copied().fold(f64::INFINITY, f64::min);
    smallest.clamp(-1.0, 1.0).acos()
}

/// Minimal angle between transverse subspaces: zero if `X + Y` is not the
/// whole space, otherwise the smallest angle between the complements of
/// `X n Y` inside `X` and `Y`. If one complement is trivial the infimum is
/// empty and the angle is `pi/2`.
pub fn min_angle(x: &OrientedSubspace, y: &OrientedSubspace) -> f64 {
    let n = x.ambient_dim();
    let joint = hstack(x.onb(), y.onb());
    if rank_of(&joint) < n {
        return 0.0;
    }
    let x_prime = complement_of_intersection(x, y);
    let y_prime = complement_of_intersection(y, x);
    match (x_prime, y_prime) {
        (Some(_), Some(yp)) => {
            let m = x.onb().transpose() * &yp;
            let top = m.svd(false, false).singular_values.iter().copied().fold(0.0, f64::max);
            top.clamp(-1.0, 1.0).acos()
        }
        _ => std::f64::consts::FRAC_PI_2,
    }
}

/// `nu(T)`: 0 if `T` is not surjective, otherwise the reciprocal of the
/// minimal norm of a right inverse, i.e. the smallest singular value.
pub fn nu(t: &DMatrix<f64>) -> f64 {
    if t.nrows() == 0 {
        return 0.0;
    }
    let svals = t.clone().svd(false, false).singular_values;
    if svals.len() < t.nrows() {
        return 0.0;
    }
    let min = svals.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= RANK_TOL {
        0.0
    } else {
        min
    }
}

/// Basis of `X` orthogonal to `X n Y`; `None` when the intersection is all
/// of `X`.
fn complement_of_intersection(
    x: &OrientedSubspace,
    y: &OrientedSubspace,
) -> Option<DMatrix<f64>> {
    let inter = intersection(x, y);
    let keep: Vec<DVector<f64>> = match &inter {
        None => (0..x.dim()).map(|i| x.onb().column(i).into()).collect(),
        Some(q) => {
            // project the intersection out of X's basis and re-orthonormalize
            let proj = q * (q.transpose() * x.onb());
            let residual = x.onb() - proj;
            match orthonormalize_truncating(&residual) {
                Some(m) => (0..m.ncols()).map(|i| m.column(i).into()).collect(),
                None => Vec::new(),
            }
        }
    };
    if keep.is_empty() {
        return None;
    }
    let mut m = DMatrix::zeros(x.ambient_dim(), keep.len());
    for (i, c) in keep.iter().enumerate() {
        m.set_column(i, c);
    }
    Some(m)
}

/// Orthonormal basis of `X n Y`, or `None` for trivial intersection.
pub(crate) fn intersection(x: &OrientedSubspace, y: &OrientedSubspace) -> Option<DMatrix<f64>> {
    let dx = x.dim();
    let stacked = hstack(x.onb(), y.onb());
    let null = nullspace(&stacked);
    if null.ncols() == 0 {
        return None;
    }
    // a null vector (u, v) satisfies X u = -Y v; map through X
    let mut cols = DMatrix::zeros(x.ambient_dim(), null.ncols());
    for i in 0..null.ncols() {
        let u = null.column(i).rows(0, dx).into_owned();
        cols.set_column(i, &(x.onb() * u));
    }
    orthonormalize_truncating(&cols)
}

fn hstack(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    m.view_mut((0, a.ncols()), (b.nrows(), b.ncols())).copy_from(b);
    m
}

pub(crate) fn rank_of(m: &DMatrix<f64>) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let svals = m.clone().svd(false, false).singular_values;
    let scale = svals.iter().copied().fold(0.0, f64::max);
    svals.iter().filter(|&&s| s > RANK_TOL * scale.max(1.0)).count()
}

/// Orthonormal basis of the kernel of `m` (columns). nalgebra's SVD is
/// thin, so the kernel is recovered as the orthogonal complement of the
/// row space.
pub(crate) fn nullspace(m: &DMatrix<f64>) -> DMatrix<f64> {
    let ncols = m.ncols();
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.unwrap();
    let svals = &svd.singular_values;
    let scale = svals.iter().copied().fold(0.0, f64::max).max(1.0);
    let rank = svals
        .iter()
        .take(vt.nrows())
        .filter(|&&s| s > RANK_TOL * scale)
        .count();
    if rank == ncols {
        return DMatrix::zeros(ncols, 0);
    }
    let rows = vt.rows(0, rank);
    let projector = DMatrix::<f64>::identity(ncols, ncols) - rows.transpose() * rows;
    match orthonormalize_truncating(&projector) {
        Some(q) => {
            debug_assert_eq!(q.ncols(), ncols - rank);
            q
        }
        None => DMatrix::zeros(ncols, 0),
    }
}

/// Modified Gram-Schmidt; `None` if any column is dependent on its
/// predecessors. The triangular change of basis has positive diagonal, so
/// the orientation of the column order is preserved.
pub(crate) fn orthonormalize(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let mut q = m.clone();
    for i in 0..q.ncols() {
        for j in 0..i {
            let proj = q.column(j).dot(&q.column(i));
            let col = q.column(i) - q.column(j) * proj;
            q.set_column(i, &col);
        }
        let norm = q.column(i).norm();
        if norm <= RANK_TOL {
            return None;
        }
        let col = q.column(i) / norm;
        q.set_column(i, &col);
    }
    Some(q)
}

/// Gram-Schmidt dropping dependent columns instead of failing.
pub(crate) fn orthonormalize_truncating(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for i in 0..m.ncols() {
        let mut v: DVector<f64> = m.column(i).into();
        let orig = v.norm();
        for q in &cols {
            let proj = q.dot(&v);
            v -= q * proj;
        }
        if v.norm() > 1e-8 * orig.max(1.0) {
            let n = v.norm();
            cols.push(v / n);
        }
    }
    if cols.is_empty() {
        return None;
    }
    let mut out = DMatrix::zeros(m.nrows(), cols.len());
    for (i, c) in cols.iter().enumerate() {
        out.set_column(i, c);
    }
    Some(out)
}
