//! The standard Hermitian structure and conversions between complex and
//! real coordinates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Standard complex structure on `R^{2n}`: blockwise `(x, y) -> (-y, x)`.
pub fn standard_j(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(2 * i + 1, 2 * i)] = 1.0;
        j[(2 * i, 2 * i + 1)] = -1.0;
    }
    j
}

/// Matrix of the standard symplectic form: `omega(u, v) = u^T Omega v`
/// with `Omega = J^T`.
pub fn omega_matrix(n: usize) -> DMatrix<f64> {
    standard_j(n).transpose()
}

/// The standard Hermitian space in complex dimension `n`, carrying its
/// `J`, `Omega` and identity metric matrices.
#[derive(Debug, Clone)]
pub struct HermitianSpace {
    pub n: usize,
    pub j: DMatrix<f64>,
    pub omega: DMatrix<f64>,
}

impl HermitianSpace {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            j: standard_j(n),
            omega: omega_matrix(n),
        }
    }

    pub fn dim_r(&self) -> usize {
        2 * self.n
    }

    pub fn omega_of(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (u.transpose() * &self.omega * v)[(0, 0)]
    }
}

/// Real coordinates of a complex vector: `z_j = x_j + i y_j` becomes the
/// pair `(x_j, y_j)`.
pub fn complex_to_real(z: &[Complex64]) -> DVector<f64> {
    let mut v = DVector::zeros(2 * z.len());
    for (j, c) in z.iter().enumerate() {
        v[2 * j] = c.re;
        v[2 * j + 1] = c.im;
    }
    v
}

/// Hermitian pairing `(a, b) = sum a_j conj(b_j)`, linear in the first
/// argument. Its real part is the euclidean product of the real vectors,
/// its imaginary part is `-omega`.
pub fn hermitian_pairing(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}
