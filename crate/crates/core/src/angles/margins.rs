//! Taming margins of skew-symmetric forms.
//!
//! For a nonzero skew form `sigma` the quantities are
//!
//! * `beta`: the largest value of `sigma` on a metric-orthonormal 2-frame,
//!   which for a skew matrix is its top singular value;
//! * `alpha`: the signed worst-case density of `sigma(x, Jx)` on the unit
//!   sphere, by the definiteness case analysis of the symmetric part of
//!   `x -> sigma(x, Jx)` (indefinite or degenerate forms give 0);
//! * `gamma = alpha / beta in [-1, 1]`, positive exactly when `sigma`
//!   tames `J`, and `+-1` exactly for positive multiples of `+-omega`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::space::standard_j;
use super::AngleError;

/// A skew-symmetric bilinear form on `R^{2n}`.
#[derive(Debug, Clone)]
pub struct SkewForm {
    m: DMatrix<f64>,
}

impl SkewForm {
    pub fn new(m: DMatrix<f64>) -> Result<Self, AngleError> {
        if m.nrows() != m.ncols() {
            return Err(AngleError::BadShape(m.nrows(), m.nrows(), m.ncols()));
        }
        let asym = (&m + m.transpose()).norm();
        if asym > 1e-9 * m.norm().max(1.0) {
            return Err(AngleError::NotAntisymmetric);
        }
        Ok(Self { m })
    }

    pub fn standard_omega(n: usize) -> Self {
        Self {
            m: standard_j(n).transpose(),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.m * y)[(0, 0)]
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self { m: &self.m * t }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            m: &self.m + &other.m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TamingMargin {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// `alpha`, `beta`, `gamma` of a nonzero skew form with respect to the
/// standard `(omega, J, g)`.
pub fn taming_margin(sigma: &SkewForm) -> Result<TamingMargin, AngleError> {
    let beta = beta_of(sigma)?;
    let alpha = alpha_of(sigma);
    Ok(TamingMargin {
        alpha,
        beta,
        gamma: alpha / beta,
    })
}

/// Top singular value of the skew matrix, via the symmetric eigenproblem
/// of `S^T S` (exact on the standard form).
fn beta_of(sigma: &SkewForm) -> Result<f64, AngleError> {
    let sts = sigma.m.transpose() * &sigma.m;
    let eig = sts.symmetric_eigenvalues();
    let top = eig.iter().copied().fold(0.0, f64::max);
    if top <= 0.0 {
        return Err(AngleError::ZeroForm);
    }
    Ok(top.sqrt())
}

fn alpha_of(sigma: &SkewForm) -> f64 {
    let m = taming_quadratic_form(sigma);
    let eig = m.symmetric_eigenvalues();
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min > 0.0 {
        min
    } else if max < 0.0 {
        max
    } else {
        0.0
    }
}

/// Symmetric part of the quadratic form `x -> sigma(x, Jx)`.
fn taming_quadratic_form(sigma: &SkewForm) -> DMatrix<f64> {
    let j = standard_j(sigma.dim() / 2);
    let sj = &sigma.m * &j;
    (&sj + sj.transpose()) * 0.5
}

/// Does the skew form tame the almost complex structure `k`? True iff the
/// symmetric part of `x -> sigma(x, Kx)` is positive definite.
pub fn tames(sigma: &SkewForm, k: &DMatrix<f64>) -> Result<bool, AngleError> {
    let dim = sigma.dim();
    if k.nrows() != dim || k.ncols() != dim {
        return Err(AngleError::BadShape(dim, k.nrows(), k.ncols()));
    }
    let acs_residual = (k * k + DMatrix::<f64>::identity(dim, dim)).norm();
    if acs_residual > 1e-8 * (dim as f64) {
        return Err(AngleError::NotAlmostComplex(acs_residual));
    }
    let sk = &sigma.m * k;
    let sym = (&sk + sk.transpose()) * 0.5;
    let eig = sym.symmetric_eigenvalues();
    Ok(eig.iter().all(|&l| l > 0.0))
}

/// Sampling oracle for `alpha`: random unit vectors refined by projected
/// gradient ascent/descent on the quadratic form. Independent of the
/// eigenvalue route; used as a cross-check in tests and verification runs.
pub fn mc_alpha(sigma: &SkewForm, seed: u64, samples: usize) -> f64 {
    let m = taming_quadratic_form(sigma);
    let min = extremal_quadratic(&m, seed, samples, false);
    let max = extremal_quadratic(&m, seed ^ 0x9e37_79b9, samples, true);
    if min > 0.0 {
        min
    } else if max < 0.0 {
        max
    } else {
        0.0
    }
}

/// Sampling oracle for `beta`: `beta = max |S x|` over the unit sphere
/// (the optimal partner of `x` is `Sx` normalized), again by sampling with
/// ascent refinement.
pub fn mc_beta(sigma: &SkewForm, seed: u64, samples: usize) -> f64 {
    let m = sigma.m.transpose() * &sigma.m;
    extremal_quadratic(&m, seed, samples, true).max(0.0).sqrt()
}

fn extremal_quadratic(m: &DMatrix<f64>, seed: u64, samples: usize, maximize: bool) -> f64 {
    let dim = m.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut best_val = f64::NEG_INFINITY;
    let mut best_x = DVector::zeros(dim);
    for _ in 0..samples.max(8) {
        let x = random_unit(&mut rng, dim);
        let v = sign * quad(m, &x);
        if v > best_val {
            best_val = v;
            best_x = x;
        }
    }
    // projected gradient ascent on the sphere
    let mut x = best_x;
    let mut step = 0.5;
    for _ in 0..400 {
        let grad = m * &x * (2.0 * sign);
        let tangent = &grad - &x * grad.dot(&x);
        if tangent.norm() < 1e-14 {
            break;
        }
        let candidate = (&x + tangent * step).normalize();
        if sign * quad(m, &candidate) > sign * quad(m, &x) {
            x = candidate;
        } else {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    quad(m, &x)
}

fn quad(m: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    (x.transpose() * m * x)[(0, 0)]
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 {
            return v / n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_of_standard_form_is_exactly_one() {
        let omega = SkewForm::standard_omega(3);
        let m = taming_margin(&omega).unwrap();
        assert_eq!(m.gamma, 1.0);
        let neg = omega.scaled(-1.0);
        assert_eq!(taming_margin(&neg).unwrap().gamma, -1.0);
    }

    #[test]
    fn gamma_scale_invariant() {
        let omega = SkewForm::standard_omega(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let t = rng.gen_range(0.01..50.0);
            let sigma = random_skew(&mut rng, 2).plus(&omega.scaled(3.0));
            let g0 = taming_margin(&sigma).unwrap().gamma;
            let g1 = taming_margin(&sigma.scaled(t)).unwrap().gamma;
            assert!((g0 - g1).abs() < 1e-10);
            let gneg = taming_margin(&sigma.scaled(-1.0)).unwrap().gamma;
            assert!((g0 + gneg).abs() < 1e-10);
        }
    }

    #[test]
    fn alpha_bounded_by_beta() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let sigma = random_skew(&mut rng, 3);
            if let Ok(m) = taming_margin(&sigma) {
                assert!(m.alpha.abs() <= m.beta + 1e-12);
                assert!(m.gamma.abs() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn superadditive_on_positive_pairs() {
        let omega = SkewForm::standard_omega(2);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            // positive-margin forms: omega plus a small skew perturbation
            let s1 = omega.scaled(rng.gen_range(0.5..2.0)).plus(&random_skew(&mut rng, 2).scaled(0.05));
            let s2 = omega.scaled(rng.gen_range(0.5..2.0)).plus(&random_skew(&mut rng, 2).scaled(0.05));
            let (g1, g2) = (
                taming_margin(&s1).unwrap().gamma,
                taming_margin(&s2).unwrap().gamma,
            );
            if g1 > 0.0 && g2 > 0.0 {
                let g = taming_margin(&s1.plus(&s2)).unwrap().gamma;
                assert!(g >= g1.min(g2) - 1e-10);
            }
        }
    }

    #[test]
    fn taming_standard_pairs() {
        let omega = SkewForm::standard_omega(2);
        let j = standard_j(2);
        assert!(tames(&omega, &j).unwrap());
        assert!(!tames(&omega.scaled(-1.0), &j).unwrap());
    }

    #[test]
    fn zero_form_and_bad_structure_rejected() {
        let zero = SkewForm::new(DMatrix::zeros(4, 4)).unwrap();
        assert_eq!(taming_margin(&zero).unwrap_err(), AngleError::ZeroForm);
        let omega = SkewForm::standard_omega(2);
        let not_acs = DMatrix::<f64>::identity(4, 4);
        assert!(matches!(
            tames(&omega, &not_acs).unwrap_err(),
            AngleError::NotAlmostComplex(_)
        ));
    }

    #[test]
    fn oracles_agree_with_eigen_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for trial in 0..10 {
            let sigma = SkewForm::standard_omega(2)
                .scaled(rng.gen_range(0.5..1.5))
                .plus(&random_skew(&mut rng, 2).scaled(0.3));
            let m = taming_margin(&sigma).unwrap();
            let a = mc_alpha(&sigma, 1000 + trial, 300);
            let b = mc_beta(&sigma, 2000 + trial, 300);
            assert!(
                (a - m.alpha).abs() <= 1e-3 * m.beta.max(1.0),
                "alpha oracle {a} vs eigen {}",
                m.alpha
            );
            assert!((b - m.beta).abs() <= 1e-3 * m.beta.max(1.0));
        }
    }

    pub(super) fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> SkewForm {
        let dim = 2 * n;
        let a = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
        SkewForm::new((&a - a.transpose()) * 0.5).unwrap()
    }
}
