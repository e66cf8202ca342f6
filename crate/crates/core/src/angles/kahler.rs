//! Kähler angles of oriented subspaces and the kernel-angle formula.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::space::{complex_to_real, hermitian_pairing, omega_matrix, standard_j};
use super::subspace::OrientedSubspace;
use super::AngleError;

/// Kähler angle of an even-dimensional oriented subspace:
/// `arccos` of the ratio of the symplectic volume `omega^m / m!` to the
/// metric volume on an oriented orthonormal basis. 0 on complex-oriented
/// complex subspaces, `pi` on anti-oriented ones, `pi/2` on totally real
/// ones; angles below `pi/2` characterize symplectic subspaces.
pub fn kahler_angle(w: &OrientedSubspace) -> Result<f64, AngleError> {
    let m = w.dim();
    if !m.is_multiple_of(2) || m == 0 {
        return Err(AngleError::OddDimension(m));
    }
    let n = w.ambient_dim() / 2;
    let omega = omega_matrix(n);
    let restricted = w.onb().transpose() * omega * w.onb();
    let cos = pfaffian(&restricted);
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Pfaffian by expansion along the first row; fine for the small matrices
/// that appear here (restricted forms on subspaces of dimension <= 8).
pub(crate) fn pfaffian(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    if n == 0 {
        return 1.0;
    }
    if !n.is_multiple_of(2) {
        return 0.0;
    }
    if n == 2 {
        return a[(0, 1)];
    }
    let mut sum = 0.0;
    for j in 1..n {
        let coeff = a[(0, j)];
        if coeff == 0.0 {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|&r| r != 0 && r != j).collect();
        let minor = a.select_rows(keep.iter()).select_columns(keep.iter());
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * coeff * pfaffian(&minor);
    }
    sum
}

/// Kähler angle of `ker(A + B)` where `A z = (z, a)` is complex linear and
/// `B z = (b, z)` is complex antilinear, by the closed formula
///
/// ```text
/// tan theta = 2 sqrt(|a|^2 |b|^2 - |(a,b)|^2) / (|a|^2 - |b|^2)
/// ```
///
/// with the quadrant convention `theta in (pi/2, pi]` when `|b| > |a|`.
/// `A + B` fails to be surjective exactly when `a` and `b` are unimodular
/// multiples of each other, which is rejected.
pub fn kernel_angle(a: &[Complex64], b: &[Complex64]) -> Result<f64, AngleError> {
    if a.len() != b.len() {
        return Err(AngleError::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let na2 = hermitian_pairing(a, a).re;
    let nb2 = hermitian_pairing(b, b).re;
    let cross = hermitian_pairing(a, b).norm_sqr();
    let discr = (na2 * nb2 - cross).max(0.0);
    let num = 2.0 * discr.sqrt();
    let den = na2 - nb2;
    let scale = (na2 + nb2).max(f64::MIN_POSITIVE);
    if num / scale < 1e-14 && den.abs() / scale < 1e-14 {
        return Err(AngleError::NotSurjective);
    }
    Ok(num.atan2(den))
}

/// The same angle computed without the formula: build the oriented plane
/// `span{a + b, J(a - b)}` (the orthogonal complement of the kernel,
/// orientation induced by `A + B`) and take its Kähler angle.
pub fn kernel_angle_direct(a: &[Complex64], b: &[Complex64]) -> Result<f64, AngleError> {
    let apb: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let amb: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let v1 = complex_to_real(&apb);
    let v2 = standard_j(a.len()) * complex_to_real(&amb);
    let w_perp = OrientedSubspace::from_columns(2 * a.len(), &[v1, v2])
        .map_err(|_| AngleError::NotSurjective)?;
    kahler_angle(&w_perp)
}
