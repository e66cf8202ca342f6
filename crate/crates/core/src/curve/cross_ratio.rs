//! The cross ratio on the sphere and its degenerate extension.

use num_complex::Complex;
use num_traits::Zero;

use super::point::{CurveScalar, ProjPoint};
use super::CurveError;

/// Cross ratio `w(z0, z1, z2, z3) = (z1 - z2)(z3 - z0) / ((z0 - z1)(z2 - z3))`
/// computed projectively, so all configurations with a point at infinity and
/// all two-coincident degenerations (values 0, 1, inf) are uniform. Three or
/// more coincident points leave the value undefined.
pub fn cross_ratio<F: CurveScalar>(
    z0: &ProjPoint<F>,
    z1: &ProjPoint<F>,
    z2: &ProjPoint<F>,
    z3: &ProjPoint<F>,
    tol: f64,
) -> Result<ProjPoint<F>, CurveError> {
    let num = z1.det(z2) * z3.det(z0);
    let den = z0.det(z1) * z2.det(z3);
    // degeneracy threshold scaled by the representatives, rather than
    // normalizing the inputs: rescaling would round determinants that the
    // formula otherwise produces exactly
    let scale = z0.scale() * z1.scale() * z2.scale() * z3.scale();
    if complex_small(&num, tol * scale) && complex_small(&den, tol * scale) {
        return Err(CurveError::CoincidentPoints);
    }
    Ok(ProjPoint::new(num, den))
}

fn complex_small<F: CurveScalar>(z: &Complex<F>, threshold: f64) -> bool {
    if F::EXACT {
        z.is_zero()
    } else {
        z.re.approx().hypot(z.im.approx()) <= threshold
    }
}

/// Is the value one of the degenerate cross-ratio values 0, 1, inf?
pub fn is_degenerate_value<F: CurveScalar>(w: &ProjPoint<F>, tol: f64) -> bool {
    w.coincides(&ProjPoint::zero(), tol)
        || w.coincides(&ProjPoint::one(), tol)
        || w.is_infinity(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::point::Mobius;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn pt(re: i64, im: i64) -> ProjPoint<Q> {
        ProjPoint::finite(Complex::new(qi(re), qi(im)))
    }

    #[test]
    fn textbook_value() {
        // w(0,1,2,3) = (1-2)(3-0) / ((0-1)(2-3)) = -3
        let w = cross_ratio(&pt(0, 0), &pt(1, 0), &pt(2, 0), &pt(3, 0), 0.0).unwrap();
        assert!(w.coincides(&pt(-3, 0), 0.0));
    }

    #[test]
    fn two_equal_points_give_standard_values() {
        let (a, b, c) = (pt(0, 0), pt(1, 0), pt(2, 0));
        // z1 = z2 -> 0
        let w = cross_ratio(&a, &b, &b, &c, 0.0).unwrap();
        assert!(w.coincides(&ProjPoint::zero(), 0.0));
        // z0 = z1 -> inf
        let w = cross_ratio(&a, &a, &b, &c, 0.0).unwrap();
        assert!(w.is_infinity(0.0));
        // z0 = z2 -> 1
        let w = cross_ratio(&a, &b, &a, &c, 0.0).unwrap();
        assert!(w.coincides(&ProjPoint::one(), 0.0));
        // z1 = z3 -> 1
        let w = cross_ratio(&a, &b, &c, &b, 0.0).unwrap();
        assert!(w.coincides(&ProjPoint::one(), 0.0));
    }

    #[test]
    fn three_coincident_rejected() {
        let (a, b) = (pt(0, 0), pt(1, 0));
        assert_eq!(
            cross_ratio(&a, &a, &a, &b, 0.0).unwrap_err(),
            CurveError::CoincidentPoints
        );
    }

    #[test]
    fn infinity_argument() {
        // w(inf, 1, 2, 3) = (1-2)/(... ) -> lim (z1-z2)(z3-z)/((z-z1)(z2-z3)) = -(1-2)/(2-3) = -1
        let w = cross_ratio(&ProjPoint::infinity(), &pt(1, 0), &pt(2, 0), &pt(3, 0), 0.0).unwrap();
        assert!(w.coincides(&pt(-1, 0), 0.0));
    }

    proptest! {
        #[test]
        fn mobius_invariance_exact(
            vals in proptest::collection::vec((-20i64..20, -20i64..20), 4),
            m in (1i64..5, -3i64..3, -3i64..3, 1i64..4)
        ) {
            let pts: Vec<ProjPoint<Q>> =
                vals.iter().map(|&(re, im)| pt(re, im)).collect();
            // require pairwise distinctness to stay in the generic case
            for i in 0..4 {
                for j in (i + 1)..4 {
                    prop_assume!(!pts[i].coincides(&pts[j], 0.0));
                }
            }
            // an invertible integer Moebius map (det = ad - bc != 0)
            let (a, b, c, d) = m;
            prop_assume!(a * d - b * c != 0);
            let mob = Mobius {
                m00: Complex::new(qi(a), Q::zero()),
                m01: Complex::new(qi(b), Q::zero()),
                m10: Complex::new(qi(c), Q::zero()),
                m11: Complex::new(qi(d), Q::zero()),
            };
            let moved: Vec<ProjPoint<Q>> = pts.iter().map(|p| mob.apply(p)).collect();
            let w0 = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3], 0.0).unwrap();
            let w1 = cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3], 0.0).unwrap();
            prop_assert!(w0.coincides(&w1, 0.0));
        }
    }
}
