//! Normal jets of analytic disk maps along coordinate subspaces.
//!
//! For a holomorphic map `f: (D, 0) -> (C^n, 0)` and the subspace
//! `Z = C^k x {0}`, the l-th normal jet is the class of the l-th
//! derivative at 0 modulo `C^k`, defined once all lower normal jets
//! vanish. The first nonvanishing level is the tangency order plus one and
//! equals the local intersection number with a hypersurface `Z`.

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use super::poly::{cc_to_f64, CPoly, MultiPoly, CC};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum JetError {
    #[error("map must have at least one normal component (k < n)")]
    NoNormalDirection,
    #[error("map does not send 0 into the subspace (component {0} nonzero at 0)")]
    BasePointOff(usize),
    #[error("jet level must be at least 1")]
    BadLevel,
}

/// A polynomial disk map into `C^n`, one exact polynomial per component.
#[derive(Debug, Clone)]
pub struct AnalyticMapModel {
    pub components: Vec<CPoly>,
}

impl AnalyticMapModel {
    pub fn new(components: Vec<CPoly>) -> Self {
        Self { components }
    }

    pub fn ambient_dim(&self) -> usize {
        self.components.len()
    }

    pub fn eval_f64(&self, z: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|p| p.eval_f64(z)).collect()
    }

    /// `l`-th complex Taylor derivative at 0: `l! * coeff_l`, per component.
    pub fn derivative_at_zero(&self, level: usize) -> Vec<CC> {
        let factorial = (1..=level as i64).product::<i64>().max(1);
        self.components
            .iter()
            .map(|p| p.coeff(level) * super::poly::cc(factorial, 0))
            .collect()
    }
}

/// Result of a normal jet query at level `l`.
#[derive(Debug, Clone, PartialEq)]
pub enum NormalJet {
    /// All lower normal jets vanish; the value is the class of the l-th
    /// derivative in `C^n / C^k` (the last `n - k` coordinates).
    Defined(Vec<CC>),
    /// A lower normal jet is nonzero; reports the first nonvanishing level.
    Undefined { first_nonzero_level: usize },
    /// Every normal jet vanishes: the map is contained in the subspace.
    ContainedInSubspace,
}

/// Normal part (last `n - k` coordinates) of the `l`-th jet of `f` at 0
/// along `Z = C^k x {0}`; requires `f(0) in Z`.
pub fn normal_jet(f: &AnalyticMapModel, k: usize, level: usize) -> Result<NormalJet, JetError> {
    let n = f.ambient_dim();
    if k >= n {
        return Err(JetError::NoNormalDirection);
    }
    if level == 0 {
        return Err(JetError::BadLevel);
    }
    for (i, p) in f.components.iter().enumerate().skip(k) {
        if !p.coeff(0).is_zero() {
            return Err(JetError::BasePointOff(i));
        }
    }
    for l in 1..level {
        if !normal_part_vanishes(f, k, l) {
            return Ok(NormalJet::Undefined {
                first_nonzero_level: l,
            });
        }
    }
    let value: Vec<CC> = f.derivative_at_zero(level)[k..].to_vec();
    Ok(NormalJet::Defined(value))
}

/// Tangency order of `f` to `C^k x {0}` at 0: the largest `l` with all
/// normal jets through level `l` zero. `None` when the map lies inside
/// the subspace (infinite order).
pub fn tangency_order(f: &AnalyticMapModel, k: usize) -> Result<Option<usize>, JetError> {
    let n = f.ambient_dim();
    if k >= n {
        return Err(JetError::NoNormalDirection);
    }
    for (i, p) in f.components.iter().enumerate().skip(k) {
        if !p.coeff(0).is_zero() {
            return Err(JetError::BasePointOff(i));
        }
    }
    let max_degree = f
        .components
        .iter()
        .skip(k)
        .filter_map(|p| p.degree())
        .max();
    let Some(max_degree) = max_degree else {
        return Ok(None); // all normal components identically zero
    };
    for l in 1..=max_degree {
        if !normal_part_vanishes(f, k, l) {
            return Ok(Some(l - 1));
        }
    }
    Ok(None)
}

/// Local intersection number with the hypersurface `C^{n-1} x {0}`:
/// tangency order plus one.
pub fn local_intersection_number(f: &AnalyticMapModel) -> Result<Option<usize>, JetError> {
    let n = f.ambient_dim();
    if n == 0 {
        return Err(JetError::NoNormalDirection);
    }
    Ok(tangency_order(f, n - 1)?.map(|ell| ell + 1))
}

fn normal_part_vanishes(f: &AnalyticMapModel, k: usize, level: usize) -> bool {
    f.components
        .iter()
        .skip(k)
        .all(|p| p.coeff(level).is_zero())
}

/// A polynomial self-map of `C^n`; components are multivariate
/// polynomials. Preserving `C^k x {0}` means the last `n - k` components
/// lie in the ideal of the last `n - k` variables.
#[derive(Debug, Clone)]
pub struct PolyMap {
    pub components: Vec<MultiPoly>,
}

impl PolyMap {
    pub fn new(components: Vec<MultiPoly>) -> Self {
        Self { components }
    }

    pub fn preserves_subspace(&self, k: usize) -> bool {
        self.components.iter().skip(k).all(|p| {
            p.terms
                .keys()
                .all(|expo| expo.iter().skip(k).any(|&e| e > 0))
        })
    }

    pub fn fixes_origin(&self) -> bool {
        self.components
            .iter()
            .all(|p| !p.terms.contains_key(&vec![0u32; p.vars]))
    }

    /// Compose with a disk map: substitute the curve components into each
    /// coordinate polynomial.
    pub fn compose(&self, f: &AnalyticMapModel) -> AnalyticMapModel {
        AnalyticMapModel::new(
            self.components
                .iter()
                .map(|p| p.compose_univariate(&f.components))
                .collect(),
        )
    }

    /// Differential at the origin as a complex matrix (rows = components).
    pub fn jacobian_at_zero(&self) -> Vec<Vec<CC>> {
        let n = self.components.len();
        (0..n)
            .map(|i| {
                (0..self.components[i].vars)
                    .map(|j| {
                        let mut unit = vec![0u32; self.components[i].vars];
                        unit[j] = 1;
                        self.components[i]
                            .terms
                            .get(&unit)
                            .cloned()
                            .unwrap_or_else(num_traits::Zero::zero)
                    })
                    .collect()
            })
            .collect()
    }
}

/// `|v mod C^k|` of a complex vector, for float comparisons in tests.
pub fn normal_norm_f64(v: &[CC], k: usize) -> f64 {
    v[k..]
        .iter()
        .map(|c| cc_to_f64(c).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::poly::cc;
    use num_traits::{One, Zero};

    fn z_pow(p: usize) -> CPoly {
        CPoly::monomial(CC::one(), p)
    }

    #[test]
    fn simple_tangency() {
        // f(z) = (z, z^2) against Z = C x {0}: j^1 = 0, j^2 = [2]
        let f = AnalyticMapModel::new(vec![z_pow(1), z_pow(2)]);
        assert_eq!(
            normal_jet(&f, 1, 1).unwrap(),
            NormalJet::Defined(vec![CC::zero()])
        );
        assert_eq!(
            normal_jet(&f, 1, 2).unwrap(),
            NormalJet::Defined(vec![cc(2, 0)])
        );
        assert_eq!(tangency_order(&f, 1).unwrap(), Some(1));
        assert_eq!(local_intersection_number(&f).unwrap(), Some(2));
    }

    #[test]
    fn contained_in_subspace() {
        let f = AnalyticMapModel::new(vec![z_pow(1), CPoly::zero()]);
        assert_eq!(tangency_order(&f, 1).unwrap(), None);
        assert_eq!(local_intersection_number(&f).unwrap(), None);
    }

    #[test]
    fn undefined_jet_reports_level() {
        // normal part z: j^1 != 0, so j^2 is undefined
        let f = AnalyticMapModel::new(vec![z_pow(1), z_pow(1)]);
        assert_eq!(
            normal_jet(&f, 1, 2).unwrap(),
            NormalJet::Undefined {
                first_nonzero_level: 1
            }
        );
    }

    #[test]
    fn base_point_must_lie_in_subspace() {
        let f = AnalyticMapModel::new(vec![z_pow(1), CPoly::new(vec![cc(1, 0)])]);
        assert_eq!(normal_jet(&f, 1, 1).unwrap_err(), JetError::BasePointOff(1));
    }

    #[test]
    fn transformation_law_exact_case() {
        // phi(x, y) = (x + y^2, y + x y): preserves C x {0}, fixes 0,
        // D phi(0) = identity
        let phi = PolyMap::new(vec![
            MultiPoly::new(2, [(vec![1, 0], cc(1, 0)), (vec![0, 2], cc(1, 0))]),
            MultiPoly::new(2, [(vec![0, 1], cc(1, 0)), (vec![1, 1], cc(1, 0))]),
        ]);
        assert!(phi.preserves_subspace(1));
        assert!(phi.fixes_origin());
        // f = (z, z^3): d^2 f(0) in C^1, so the 3-jet transforms linearly
        let f = AnalyticMapModel::new(vec![z_pow(1), z_pow(3)]);
        let composed = phi.compose(&f);
        let lhs = normal_jet(&composed, 1, 3).unwrap();
        let rhs = normal_jet(&f, 1, 3).unwrap();
        // D phi(0) = id acts trivially on the normal class
        assert_eq!(lhs, rhs);
    }
}
