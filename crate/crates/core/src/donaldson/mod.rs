//! Degree, index, and dimension arithmetic for high-degree symplectic
//! hypersurfaces.
//!
//! Everything in this module is exact: inputs are rationals or integers,
//! outputs are rationals, integers, or boolean verdicts. The two base
//! quantities are the Chern bound `D_* = (1 + theta0)/(1 - theta0) |alpha|`
//! on `c1(A)/omega(A)` for holomorphic curves under taming control, and the
//! degree threshold `D^* = 2(D_* + n)` above which every degree rules out
//! spheres inside the hypersurface and forces at least three intersection
//! points with it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = Ratio<BigInt>;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum DonaldsonError {
    #[error("theta0 must satisfy 0 < theta0 < 1, got {0}")]
    BadTheta(String),
    #[error("norm of the Chern representative must be nonnegative")]
    NegativeAlphaNorm,
    #[error("omega(A) must be a positive integer, got {0}")]
    BadOmegaA(i64),
    #[error("energy bound must be a nonnegative integer")]
    BadEnergy,
    #[error("tangency orders must be nonnegative")]
    BadOrder,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `D_* = (1 + theta0)/(1 - theta0) * |alpha|`, the taming bound on
/// `c1(A)` per unit of symplectic area. Monotone increasing in `theta0`
/// and exactly `|alpha|` in the flat limit.
pub fn d_star(theta0: &Rational, norm_alpha: &Rational) -> Result<Rational, DonaldsonError> {
    if theta0 <= &Rational::zero() || theta0 >= &Rational::one() {
        return Err(DonaldsonError::BadTheta(theta0.to_string()));
    }
    if norm_alpha < &Rational::zero() {
        return Err(DonaldsonError::NegativeAlphaNorm);
    }
    Ok((Rational::one() + theta0) / (Rational::one() - theta0) * norm_alpha)
}

/// The degree threshold `D^* = 2(D_* + n)`. Every degree `D >= D^*`
/// satisfies both sphere-exclusion conditions: `D > max(D_*, D_* + n - 4)`
/// and `D > 2 max(D_*, D_* + n - 2)`.
pub fn degree_threshold(
    n: i64,
    theta0: &Rational,
    norm_alpha: &Rational,
) -> Result<Rational, DonaldsonError> {
    let ds = d_star(theta0, norm_alpha)?;
    Ok((ds + rat(n)) * rat(2))
}

/// Both exclusion conditions for a candidate degree.
pub fn degree_conditions(n: i64, d_star: &Rational, degree: &Rational) -> (bool, bool) {
    let cond_a = degree > &d_star.clone().max(d_star.clone() + rat(n) - rat(4));
    let cond_b = degree > &(d_star.clone().max(d_star.clone() + rat(n) - rat(2)) * rat(2));
    (cond_a, cond_b)
}

/// Expected dimension of the space of simple spheres inside the degree-`D`
/// hypersurface in the class `A`:
/// `2n - 8 + 2(c1(A) - D omega(A))`, together with the taming-bound
/// variant `2n - 8 + 2(D_* - D) omega(A)` which dominates it whenever
/// `c1(A) <= D_* omega(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereInYIndex {
    pub index: Rational,
    pub bound_variant: Rational,
    pub negative: bool,
}

pub fn index_sphere_in_y(
    n: i64,
    c1_a: i64,
    degree: &Rational,
    omega_a: i64,
    d_star: &Rational,
) -> Result<SphereInYIndex, DonaldsonError> {
    if omega_a < 1 {
        return Err(DonaldsonError::BadOmegaA(omega_a));
    }
    let index = rat(2 * n - 8) + (rat(c1_a) - degree * rat(omega_a)) * rat(2);
    let bound_variant = rat(2 * n - 8) + (d_star - degree) * rat(omega_a) * rat(2);
    let negative = index < Rational::zero();
    Ok(SphereInYIndex {
        index,
        bound_variant,
        negative,
    })
}

/// Family version: a `k`-dimensional parameter space adds `k` to the
/// index, and the sphere-exclusion condition becomes
/// `2D > max(2 D_*, 2 D_* + 2n - 8 + k)`.
pub fn index_sphere_in_y_family(
    n: i64,
    c1_a: i64,
    degree: &Rational,
    omega_a: i64,
    d_star: &Rational,
    family_dim: i64,
) -> Result<(SphereInYIndex, bool), DonaldsonError> {
    let base = index_sphere_in_y(n, c1_a, degree, omega_a, d_star)?;
    let index = base.index.clone() + rat(family_dim);
    let bound_variant = base.bound_variant.clone() + rat(family_dim);
    let negative = index < Rational::zero();
    let two_d = degree * rat(2);
    let condition =
        two_d > (d_star * rat(2)).max(d_star * rat(2) + rat(2 * n - 8) + rat(family_dim));
    Ok((
        SphereInYIndex {
            index,
            bound_variant,
            negative,
        },
        condition,
    ))
}

/// Largest local intersection number `I` a simple sphere can have with the
/// hypersurface at one point, from nonnegativity of the tangency stratum
/// dimension `2n - 4 + 2 c1(A) - 2I >= 0`, plus the three-point verdict:
/// the total intersection `D omega(A)` exceeds twice the bound iff every
/// nonconstant sphere must meet the hypersurface in at least 3 domain
/// points.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencyBound {
    pub max_order: i64,
    pub max_order_bound_variant: Rational,
    pub forces_three_points: bool,
}

pub fn max_tangency_order(
    n: i64,
    c1_a: i64,
    degree: &Rational,
    omega_a: i64,
    d_star: &Rational,
) -> Result<TangencyBound, DonaldsonError> {
    if omega_a < 1 {
        return Err(DonaldsonError::BadOmegaA(omega_a));
    }
    let max_order = c1_a + n - 2;
    let max_order_bound_variant = d_star * rat(omega_a) + rat(n - 2);
    let lhs = degree * rat(omega_a);
    let rhs = (d_star * rat(omega_a) + rat(n - 2)) * rat(2);
    Ok(TangencyBound {
        max_order,
        max_order_bound_variant,
        forces_three_points: lhs > rhs,
    })
}

/// Index of spheres inside the intersection of two hypersurfaces of
/// degrees `D_0, D_1`: `2n - 10 + 2 c1(A) - 2 (D_0 + D_1) omega(A)`;
/// guaranteed negative when `D_0 + D_1 > max(D_*, D_* + n - 5)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoHypersurfaceIndex {
    pub index: Rational,
    pub negative: bool,
    pub hypothesis_holds: bool,
}

pub fn index_two_hypersurfaces(
    n: i64,
    c1_a: i64,
    d0: &Rational,
    d1: &Rational,
    omega_a: i64,
    d_star: &Rational,
) -> Result<TwoHypersurfaceIndex, DonaldsonError> {
    if omega_a < 1 {
        return Err(DonaldsonError::BadOmegaA(omega_a));
    }
    let sum = d0 + d1;
    let index = rat(2 * n - 10) + rat(2 * c1_a) - sum.clone() * rat(2 * omega_a);
    let hypothesis = sum > d_star.clone().max(d_star.clone() + rat(n) - rat(5));
    Ok(TwoHypersurfaceIndex {
        negative: index < Rational::zero(),
        index,
        hypothesis_holds: hypothesis,
    })
}

/// Integer homology classes with bounded pairing against the area row and
/// componentwise box bound `|A_j| <= E`. With the positivity filter the
/// area pairing is confined to `[0, E]`, without it to `[-E, E]`, so the
/// output is symmetric under `A -> -A`.
pub fn enumerate_bounded_classes(
    omega_row: &[i64],
    energy: i64,
    positive_only: bool,
) -> Result<Vec<Vec<i64>>, DonaldsonError> {
    if energy < 0 {
        return Err(DonaldsonError::BadEnergy);
    }
    let rank = omega_row.len();
    if rank == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut current = vec![0i64; rank];
    fn rec(
        idx: usize,
        omega_row: &[i64],
        energy: i64,
        positive_only: bool,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if idx == omega_row.len() {
            let pairing: i64 = omega_row.iter().zip(current.iter()).map(|(a, b)| a * b).sum();
            let ok = if positive_only {
                (0..=energy).contains(&pairing)
            } else {
                pairing.abs() <= energy
            };
            if ok {
                out.push(current.clone());
            }
            return;
        }
        for v in -energy..=energy {
            current[idx] = v;
            rec(idx + 1, omega_row, energy, positive_only, current, out);
        }
        current[idx] = 0;
    }
    rec(0, omega_row, energy, positive_only, &mut current, &mut out);
    Ok(out)
}

/// Counting weight `1/(l0! l1!)` and the covering degree `l1!` relating
/// the one- and two-hypersurface evaluation counts.
pub fn gw_normalization(ell0: u64, ell1: u64) -> Result<(Rational, BigInt), DonaldsonError> {
    let f0 = factorial(ell0);
    let f1 = factorial(ell1);
    let weight = Rational::new(BigInt::one(), &f0 * &f1);
    Ok((weight, f1))
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exhaustive verdict for one parameter tuple, as emitted by the CLI.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub d_star: Rational,
    pub d_threshold: Rational,
    pub degree_condition_a: bool,
    pub degree_condition_b: bool,
    pub sphere_index: Option<SphereInYIndex>,
    pub tangency: Option<TangencyBound>,
    pub two_hypersurface: Option<TwoHypersurfaceIndex>,
    pub family_condition: Option<bool>,
    pub ell: Option<Rational>,
    pub ell_at_least_3: Option<bool>,
}

#[allow(clippy::too_many_arguments)]
pub fn bounds_report(
    n: i64,
    theta0: &Rational,
    norm_alpha: &Rational,
    degree: Option<&Rational>,
    degrees: Option<(&Rational, &Rational)>,
    omega_a: i64,
    c1_a: i64,
    family_dim: Option<i64>,
) -> Result<BoundsReport, DonaldsonError> {
    let ds = d_star(theta0, norm_alpha)?;
    let threshold = degree_threshold(n, theta0, norm_alpha)?;
    let mut report = BoundsReport {
        d_star: ds.clone(),
        d_threshold: threshold,
        degree_condition_a: false,
        degree_condition_b: false,
        sphere_index: None,
        tangency: None,
        two_hypersurface: None,
        family_condition: None,
        ell: None,
        ell_at_least_3: None,
    };
    if let Some(d) = degree {
        let (a, b) = degree_conditions(n, &ds, d);
        report.degree_condition_a = a;
        report.degree_condition_b = b;
        report.sphere_index = Some(index_sphere_in_y(n, c1_a, d, omega_a, &ds)?);
        report.tangency = Some(max_tangency_order(n, c1_a, d, omega_a, &ds)?);
        let ell = d * rat(omega_a);
        report.ell_at_least_3 = Some(ell >= rat(3));
        report.ell = Some(ell);
        if let Some(k) = family_dim {
            let (_, cond) = index_sphere_in_y_family(n, c1_a, d, omega_a, &ds, k)?;
            report.family_condition = Some(cond);
        }
    }
    if let Some((d0, d1)) = degrees {
        report.two_hypersurface = Some(index_two_hypersurfaces(n, c1_a, d0, d1, omega_a, &ds)?);
    }
    Ok(report)
}

/// Smallest integer at least `q`.
pub fn ceil_rational(q: &Rational) -> BigInt {
    let (num, den) = (q.numer(), q.denom());
    let (quot, rem) = num.div_rem(den);
    if rem.is_zero() || num.is_negative() {
        quot
    } else {
        quot + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn d_star_examples() {
        assert_eq!(d_star(&r(1, 2), &rat(3)).unwrap(), rat(9));
        // limit theta0 -> 0 approaches |alpha|
        assert_eq!(d_star(&r(1, 1000000), &rat(5)).unwrap(), r(5000005, 999999));
        // monotone in theta0
        let mut prev = Rational::zero();
        for t in 1..10 {
            let v = d_star(&r(t, 10), &rat(2)).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(d_star(&rat(1), &rat(1)).is_err());
        assert!(d_star(&rat(0), &rat(1)).is_err());
    }

    #[test]
    fn threshold_example_and_conditions() {
        assert_eq!(degree_threshold(3, &r(1, 2), &rat(3)).unwrap(), rat(24));
        // threshold minus 2 D_* is exactly 2n
        for n in 1..=10 {
            let ds = d_star(&r(3, 10), &rat(4)).unwrap();
            let thr = degree_threshold(n, &r(3, 10), &rat(4)).unwrap();
            assert_eq!(thr - ds.clone() * rat(2), rat(2 * n));
        }
        // sweep: the threshold itself satisfies both conditions
        for n in 1..=10i64 {
            for t in 1..=9 {
                for a in 0..=10 {
                    let theta = r(t, 10);
                    let ds = d_star(&theta, &rat(a)).unwrap();
                    let thr = degree_threshold(n, &theta, &rat(a)).unwrap();
                    let (ca, cb) = degree_conditions(n, &ds, &thr);
                    assert!(ca && cb, "violated at n={n} t={t} a={a}");
                }
            }
        }
    }

    #[test]
    fn sphere_index_example() {
        let idx = index_sphere_in_y(3, 5, &rat(10), 1, &rat(9)).unwrap();
        assert_eq!(idx.index, rat(-12));
        assert!(idx.negative);
    }

    #[test]
    fn tangency_example() {
        let t = max_tangency_order(3, 5, &rat(24), 1, &rat(9)).unwrap();
        assert_eq!(t.max_order, 6);
        // equality case is not conclusive: D omega = 2(D_* omega + n - 2) exactly
        let d_eq = rat(2 * (9 + 3 - 2));
        let t_eq = max_tangency_order(3, 5, &d_eq, 1, &rat(9)).unwrap();
        assert!(!t_eq.forces_three_points);
    }

    #[test]
    fn two_hypersurface_example() {
        let ds = rat(9);
        let idx = index_two_hypersurfaces(4, 3, &rat(20), &rat(20), 1, &ds).unwrap();
        assert_eq!(idx.index, rat(2 * 4 - 10 + 6 - 80));
        assert!(idx.negative && idx.hypothesis_holds);
        // boundary equality flagged non-conclusive
        let sum_eq = ds.clone().max(ds.clone() + rat(4) - rat(5));
        let idx = index_two_hypersurfaces(4, 3, &sum_eq, &rat(0), 1, &ds).unwrap();
        assert!(!idx.hypothesis_holds);
    }

    #[test]
    fn bounded_class_enumeration() {
        let with_filter = enumerate_bounded_classes(&[1], 3, true).unwrap();
        assert_eq!(with_filter, vec![vec![0], vec![1], vec![2], vec![3]]);
        let without = enumerate_bounded_classes(&[1], 3, false).unwrap();
        assert_eq!(without.len(), 7); // -3..=3
        assert_eq!(enumerate_bounded_classes(&[1, 2], 0, true).unwrap(), vec![vec![0, 0]]);
        // symmetry under negation without the filter
        let square = enumerate_bounded_classes(&[1, 1], 2, false).unwrap();
        for a in &square {
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            assert!(square.contains(&neg));
        }
        // box-volume growth
        let e3 = enumerate_bounded_classes(&[1, 1], 3, false).unwrap().len();
        assert!(e3 > square.len());
    }

    #[test]
    fn gw_weights() {
        let (w, deg) = gw_normalization(3, 0).unwrap();
        assert_eq!(w, r(1, 6));
        assert_eq!(deg, BigInt::from(1));
        let (w, deg) = gw_normalization(0, 0).unwrap();
        assert_eq!(w, rat(1));
        assert_eq!(deg, BigInt::from(1));
        // chain identity (1/l0!)(1/l1!) * l1! = 1/l0!
        let (w01, deg1) = gw_normalization(4, 3).unwrap();
        let (w0, _) = gw_normalization(4, 0).unwrap();
        assert_eq!(w01 * Rational::from_integer(deg1), w0);
    }

    #[test]
    fn ceil_works() {
        assert_eq!(ceil_rational(&r(7, 2)), BigInt::from(4));
        assert_eq!(ceil_rational(&rat(5)), BigInt::from(5));
        assert_eq!(ceil_rational(&r(-7, 2)), BigInt::from(-3));
    }
}
