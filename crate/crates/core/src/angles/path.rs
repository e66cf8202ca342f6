//! The canonical path between compatible almost complex structures.
//!
//! Two `omega`-compatible structures are joined through their metrics: the
//! metric `g_t = (1 - t) g_0 + t g_1` stays positive definite, and every
//! metric `g` determines a canonical compatible structure by the polar
//! recipe `A = -G^{-1} Omega`, `J_g = A (-A^2)^{-1/2}`. Since `A = J_i`
//! exactly when `g = g_{J_i}`, the endpoints are reproduced.

use nalgebra::DMatrix;

use super::space::omega_matrix;
use super::AngleError;

/// The canonical `omega`-compatible structure attached to a positive
/// metric `G` (as a matrix), computed in a `G`-orthonormal frame via
/// Cholesky so the symmetric square root is well conditioned.
pub fn compatible_from_metric(g: &DMatrix<f64>, n: usize) -> Result<DMatrix<f64>, AngleError> {
    let dim = 2 * n;
    if g.nrows() != dim || g.ncols() != dim {
        return Err(AngleError::BadShape(dim, g.nrows(), g.ncols()));
    }
    let omega = omega_matrix(n);
    let chol = g
        .clone()
        .cholesky()
        .ok_or(AngleError::NotCompatible(f64::INFINITY))?;
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or(AngleError::NotCompatible(f64::INFINITY))?;
    // A = -G^{-1} Omega in the G-orthonormal frame: Atilde = L^T A L^{-T}
    let a = -(g
        .clone()
        .try_inverse()
        .ok_or(AngleError::NotCompatible(f64::INFINITY))?)
        * &omega;
    let a_tilde = l.transpose() * &a * l_inv.transpose();
    // inverse square root of the positive symmetric -Atilde^2
    let p = -(&a_tilde * &a_tilde);
    let p_sym = (&p + p.transpose()) * 0.5;
    let eig = p_sym.symmetric_eigen();
    let mut inv_sqrt = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let lambda = eig.eigenvalues[i];
        if lambda <= 0.0 {
            return Err(AngleError::NotCompatible(lambda));
        }
        let col = eig.eigenvectors.column(i);
        inv_sqrt += col * col.transpose() / lambda.sqrt();
    }
    let j_tilde = &a_tilde * inv_sqrt;
    Ok(l_inv.transpose() * j_tilde * l.transpose())
}

/// Metric of a compatible structure: `g_K(u, v) = omega(u, K v)`.
pub fn metric_of(k: &DMatrix<f64>, n: usize) -> DMatrix<f64> {
    omega_matrix(n) * k
}

/// Point `t` on the canonical path from `j0` to `j1` (both
/// `omega`-compatible). The whole path is compatible and the endpoints
/// are recovered up to numerical round-off.
pub fn canonical_path(
    j0: &DMatrix<f64>,
    j1: &DMatrix<f64>,
    t: f64,
    n: usize,
) -> Result<DMatrix<f64>, AngleError> {
    let dim = 2 * n;
    for k in [j0, j1] {
        if k.nrows() != dim || k.ncols() != dim {
            return Err(AngleError::BadShape(dim, k.nrows(), k.ncols()));
        }
        let residual = (k * k + DMatrix::<f64>::identity(dim, dim)).norm();
        if residual > 1e-8 * dim as f64 {
            return Err(AngleError::NotAlmostComplex(residual));
        }
        let omega = omega_matrix(n);
        let compat = (k.transpose() * &omega * k - &omega).norm();
        if compat > 1e-8 * dim as f64 {
            return Err(AngleError::NotCompatible(compat));
        }
        let sym = (&omega * k + (&omega * k).transpose()) * 0.5;
        let min = sym
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min <= 0.0 {
            return Err(AngleError::NotCompatible(min));
        }
    }
    let g0 = metric_of(j0, n);
    let g1 = metric_of(j1, n);
    let gt = &g0 * (1.0 - t) + &g1 * t;
    let gt_sym = (&gt + gt.transpose()) * 0.5;
    compatible_from_metric(&gt_sym, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::space::standard_j;
    use nalgebra::DVector;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_compatible(rng: &mut ChaCha8Rng, n: usize, spread: f64) -> DMatrix<f64> {
        let dim = 2 * n;
        let a = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0)) * spread;
        let g = DMatrix::<f64>::identity(dim, dim) + (&a * a.transpose()) * 0.5 + &a + a.transpose();
        // make sure it is positive definite before using it
        let shift = g
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
            .min(0.0);
        let g = g + DMatrix::<f64>::identity(dim, dim) * (0.1 - shift);
        compatible_from_metric(&g, n).unwrap()
    }

    #[test]
    fn standard_metric_returns_standard_j() {
        let n = 3;
        let g = DMatrix::<f64>::identity(6, 6);
        let j = compatible_from_metric(&g, n).unwrap();
        assert!((j - standard_j(n)).norm() < 1e-13);
    }

    #[test]
    fn endpoints_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=3usize {
            let j0 = random_compatible(&mut rng, n, 0.4);
            let j1 = random_compatible(&mut rng, n, 0.4);
            let p0 = canonical_path(&j0, &j1, 0.0, n).unwrap();
            let p1 = canonical_path(&j0, &j1, 1.0, n).unwrap();
            assert!((p0 - &j0).norm() < 1e-10);
            assert!((p1 - &j1).norm() < 1e-10);
        }
    }

    #[test]
    fn path_stays_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let n = 2;
        let omega = omega_matrix(n);
        let j0 = random_compatible(&mut rng, n, 0.5);
        let j1 = random_compatible(&mut rng, n, 0.5);
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let jt = canonical_path(&j0, &j1, t, n).unwrap();
            let dim = 2 * n;
            assert!((&jt * &jt + DMatrix::<f64>::identity(dim, dim)).norm() < 1e-11);
            assert!((jt.transpose() * &omega * &jt - &omega).norm() < 1e-11);
            let sym = (&omega * &jt + (&omega * &jt).transpose()) * 0.5;
            assert!(sym.symmetric_eigenvalues().iter().all(|&l| l > 0.0));
        }
    }

    #[test]
    fn identical_endpoints_constant_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let j0 = random_compatible(&mut rng, 2, 0.3);
        for i in 0..=4 {
            let t = i as f64 / 4.0;
            let jt = canonical_path(&j0, &j0, t, 2).unwrap();
            assert!((jt - &j0).norm() < 1e-11);
        }
    }

    #[test]
    fn contraction_trend() {
        // sup_t |J_t - J_0| shrinks as |J_1 - J_0| shrinks
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        let n = 2;
        let j0 = standard_j(n);
        let mut sups = Vec::new();
        for &spread in &[0.4, 0.2, 0.1, 0.05] {
            let j1 = random_compatible(&mut rng, n, spread);
            let mut sup: f64 = 0.0;
            for i in 0..=20 {
                let t = i as f64 / 20.0;
                let jt = canonical_path(&j0, &j1, t, n).unwrap();
                sup = sup.max(crate::angles::construct::op_norm(&(jt - &j0)));
            }
            sups.push(sup);
        }
        for w in sups.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn incompatible_endpoint_rejected() {
        let n = 2;
        let bad = DMatrix::<f64>::identity(4, 4);
        assert!(canonical_path(&standard_j(n), &bad, 0.5, n).is_err());
        let anti = -standard_j(n);
        // J^2 = -1 and omega-invariant, but tames -omega instead
        assert!(matches!(
            canonical_path(&standard_j(n), &anti, 0.5, n),
            Err(AngleError::NotCompatible(_))
        ));
    }

    #[test]
    fn vectors_shrink_under_interpolated_metrics() {
        // sanity: metric of a compatible structure is positive definite
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let j = random_compatible(&mut rng, 2, 0.6);
        let g = metric_of(&j, 2);
        let v = DVector::from_vec(vec![1.0, -2.0, 0.5, 3.0]);
        assert!((v.transpose() * &g * &v)[(0, 0)] > 0.0);
    }
}
