//! Points on the Riemann sphere as projective pairs.
//!
//! A point of `S^2 = C u {inf}` is stored as `[a : b]` with `(a, b) != (0, 0)`;
//! `b = 0` is the point at infinity. All cross-ratio and Moebius arithmetic
//! is expressed through the 2x2 determinant `d(p, q) = a_p b_q - a_q b_p`,
//! which vanishes exactly when the points coincide. This removes every
//! special case at infinity and matches the continuous extension of the
//! cross ratio to degenerate configurations.

use num_complex::Complex;
use num_traits::{Num, One, ToPrimitive, Zero};
use std::fmt;
use std::ops::Neg;

/// Component field for sphere points: `f64` (toleranced comparisons) or
/// `BigRational` (exact comparisons).
pub trait CurveScalar: Num + Clone + PartialEq + Neg<Output = Self> + fmt::Debug {
    /// Exact scalars compare by equality and ignore tolerances.
    const EXACT: bool;
    fn approx(&self) -> f64;
    fn from_approx(x: f64) -> Self;
}

impl CurveScalar for f64 {
    const EXACT: bool = false;
    fn approx(&self) -> f64 {
        *self
    }
    fn from_approx(x: f64) -> Self {
        x
    }
}

impl CurveScalar for num_rational::BigRational {
    const EXACT: bool = true;
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn from_approx(x: f64) -> Self {
        num_rational::BigRational::from_float(x).unwrap_or_else(Zero::zero)
    }
}

/// Default absolute tolerance for coincidence of normalized projective
/// representatives in floating mode.
pub const DEFAULT_POINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint<F> {
    pub a: Complex<F>,
    pub b: Complex<F>,
}

impl<F: CurveScalar> ProjPoint<F> {
    pub fn new(a: Complex<F>, b: Complex<F>) -> Self {
        debug_assert!(!(a.is_zero() && b.is_zero()), "[0 : 0] is not a point");
        Self { a, b }
    }

    pub fn finite(z: Complex<F>) -> Self {
        Self {
            a: z,
            b: Complex::one(),
        }
    }

    pub fn infinity() -> Self {
        Self {
            a: Complex::one(),
            b: Complex::zero(),
        }
    }

    pub fn zero() -> Self {
        Self {
            a: Complex::zero(),
            b: Complex::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            a: Complex::one(),
            b: Complex::one(),
        }
    }

    /// `a_p b_q - a_q b_p`; zero iff the points coincide.
    pub fn det(&self, other: &Self) -> Complex<F> {
        self.a.clone() * other.b.clone() - other.a.clone() * self.b.clone()
    }

    /// Scale the representative so its largest component has magnitude near 1.
    /// Componentwise division keeps quotients exact whenever they are
    /// representable (a reciprocal multiply would round twice). Exact
    /// scalars are left untouched.
    pub fn normalized(&self) -> Self {
        if F::EXACT {
            return self.clone();
        }
        let scale = mag(&self.a).max(mag(&self.b));
        if scale == 0.0 || !scale.is_finite() {
            return self.clone();
        }
        let s = F::from_approx(scale);
        let div = |z: &Complex<F>| {
            Complex::new(z.re.clone() / s.clone(), z.im.clone() / s.clone())
        };
        Self {
            a: div(&self.a),
            b: div(&self.b),
        }
    }

    pub fn is_infinity(&self, tol: f64) -> bool {
        self.coincides(&Self::infinity(), tol)
    }

    /// The finite value `a / b`, if the point is finite.
    pub fn value(&self, tol: f64) -> Option<Complex<F>> {
        if self.is_infinity(tol) {
            None
        } else {
            Some(self.a.clone() / self.b.clone())
        }
    }

    /// Largest component magnitude of the representative.
    pub fn scale(&self) -> f64 {
        mag(&self.a).max(mag(&self.b))
    }

    /// Coincidence test: exact determinant vanishing in exact mode,
    /// normalized `|det| <= tol` in floating mode.
    pub fn coincides(&self, other: &Self, tol: f64) -> bool {
        let det = self.det(other);
        if F::EXACT {
            det.is_zero()
        } else {
            let scale = norm1(self) * norm1(other);
            mag(&det) <= tol * scale.max(f64::MIN_POSITIVE)
        }
    }

    /// Chordal distance on the unit sphere, diameter 2.
    pub fn chordal(&self, other: &Self) -> f64 {
        let det = mag(&self.det(other));
        let na = norm2(self);
        let nb = norm2(other);
        if na == 0.0 || nb == 0.0 {
            return 0.0;
        }
        2.0 * det / (na * nb)
    }
}

fn mag<F: CurveScalar>(z: &Complex<F>) -> f64 {
    let re = z.re.approx();
    let im = z.im.approx();
    re.hypot(im)
}

fn norm1<F: CurveScalar>(p: &ProjPoint<F>) -> f64 {
    mag(&p.a).max(mag(&p.b))
}

fn norm2<F: CurveScalar>(p: &ProjPoint<F>) -> f64 {
    let (a, b) = (mag(&p.a), mag(&p.b));
    (a * a + b * b).sqrt()
}

/// A Moebius transformation as a projective 2x2 matrix.
#[derive(Debug, Clone)]
pub struct Mobius<F> {
    pub m00: Complex<F>,
    pub m01: Complex<F>,
    pub m10: Complex<F>,
    pub m11: Complex<F>,
}

impl<F: CurveScalar> Mobius<F> {
    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        ProjPoint {
            a: self.m00.clone() * p.a.clone() + self.m01.clone() * p.b.clone(),
            b: self.m10.clone() * p.a.clone() + self.m11.clone() * p.b.clone(),
        }
    }

    pub fn det(&self) -> Complex<F> {
        self.m00.clone() * self.m11.clone() - self.m01.clone() * self.m10.clone()
    }

    /// The unique Moebius map sending `p -> 0`, `q -> 1`, `r -> inf`.
    /// Requires the three points to be pairwise distinct.
    pub fn through(p: &ProjPoint<F>, q: &ProjPoint<F>, r: &ProjPoint<F>) -> Self {
        let dqr = q.det(r);
        let dqp = q.det(p);
        Self {
            m00: dqr.clone() * p.b.clone(),
            m01: -(dqr * p.a.clone()),
            m10: dqp.clone() * r.b.clone(),
            m11: -(dqp * r.a.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn pt(re: i64, im: i64) -> ProjPoint<Q> {
        ProjPoint::finite(Complex::new(q(re, 1), q(im, 1)))
    }

    #[test]
    fn coincidence_and_infinity() {
        let p = pt(3, 1);
        assert!(p.coincides(&pt(3, 1), 0.0));
        assert!(!p.coincides(&pt(3, 2), 0.0));
        let inf: ProjPoint<Q> = ProjPoint::infinity();
        assert!(inf.is_infinity(0.0));
        assert!(!p.is_infinity(0.0));
        // non-normalized representative of the same point
        let two = Complex::new(q(2, 1), Q::zero());
        let p2 = ProjPoint::new(p.a.clone() * two.clone(), p.b.clone() * two);
        assert!(p.coincides(&p2, 0.0));
    }

    #[test]
    fn mobius_through_hits_targets() {
        let (p, q_, r) = (pt(2, 0), pt(5, 1), ProjPoint::infinity());
        let m = Mobius::through(&p, &q_, &r);
        assert!(m.apply(&p).coincides(&ProjPoint::zero(), 0.0));
        assert!(m.apply(&q_).coincides(&ProjPoint::one(), 0.0));
        assert!(m.apply(&r).is_infinity(0.0));
    }

    #[test]
    fn chordal_metric_antipodes() {
        let zero: ProjPoint<f64> = ProjPoint::zero();
        let inf: ProjPoint<f64> = ProjPoint::infinity();
        assert!((zero.chordal(&inf) - 2.0).abs() < 1e-15);
        assert!(zero.chordal(&zero) < 1e-15);
    }
}
