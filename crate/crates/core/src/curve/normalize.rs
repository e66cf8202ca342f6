//! Component normalization by the unique Moebius map fixing three special
//! points.
//!
//! A stable component carries at least three special points, so there is a
//! unique Moebius transformation sending the first three of them (marked
//! points by ascending label, then nodal points by ascending neighbor id)
//! to 0, 1, inf. Applying it to all points on that component changes no
//! cross ratio.

use std::collections::BTreeMap;

use super::point::{CurveScalar, Mobius, ProjPoint};
use super::{CurveError, NodalCurve, SpecialPoint};
use crate::tree::VertexId;

/// Apply the normalizing Moebius map of component `v` to every special
/// point on `v`, leaving all other components untouched.
pub fn normalize_component<F: CurveScalar>(
    curve: &NodalCurve<F>,
    v: VertexId,
) -> Result<NodalCurve<F>, CurveError> {
    let special = curve.special_points(v);
    if special.len() < 3 {
        return Err(CurveError::TooFewSpecialPoints(v));
    }
    let mobius = Mobius::through(special[0].1, special[1].1, special[2].1);

    let mut nodal: BTreeMap<(VertexId, VertexId), ProjPoint<F>> = BTreeMap::new();
    for (a, b) in curve.tree().edges() {
        for (x, y) in [(a, b), (b, a)] {
            let p = curve.nodal_point(x, y).unwrap();
            let q = if x == v {
                mobius.apply(p).normalized()
            } else {
                p.clone()
            };
            nodal.insert((x, y), q);
        }
    }
    let mut marked: BTreeMap<_, ProjPoint<F>> = BTreeMap::new();
    for (l, w) in curve.tree().labels() {
        let p = curve.marked_point(l).unwrap();
        let q = if w == v {
            mobius.apply(p).normalized()
        } else {
            p.clone()
        };
        marked.insert(l, q);
    }
    NodalCurve::new(curve.tree().clone(), nodal, marked, curve.tol())
}

/// True when the first three special points of `v` already sit at 0, 1, inf.
pub fn is_normalized<F: CurveScalar>(curve: &NodalCurve<F>, v: VertexId) -> bool {
    let special = curve.special_points(v);
    if special.len() < 3 {
        return false;
    }
    let tol = curve.tol();
    special[0].1.coincides(&ProjPoint::zero(), tol)
        && special[1].1.coincides(&ProjPoint::one(), tol)
        && special[2].1.is_infinity(tol)
}

/// The special points of `v` ordered as used by normalization.
pub fn normalization_order<F: CurveScalar>(
    curve: &NodalCurve<F>,
    v: VertexId,
) -> Vec<SpecialPoint> {
    curve.special_points(v).into_iter().map(|(s, _)| s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use num_rational::BigRational;
    use std::collections::BTreeMap;

    type Q = BigRational;

    fn pt(re: i64, im: i64) -> ProjPoint<Q> {
        ProjPoint::finite(Complex::new(
            Q::from_integer(re.into()),
            Q::from_integer(im.into()),
        ))
    }

    #[test]
    fn already_normalized_fixed() {
        let c = NodalCurve::smooth(
            vec![ProjPoint::zero(), ProjPoint::one(), ProjPoint::infinity(), pt(5, 2)],
            1,
            0.0,
        )
        .unwrap();
        assert!(is_normalized(&c, 0));
        let n = normalize_component(&c, 0).unwrap();
        for l in 1..=4 {
            assert!(n
                .marked_point(l)
                .unwrap()
                .coincides(c.marked_point(l).unwrap(), 0.0));
        }
    }

    #[test]
    fn first_three_land_on_standard_points() {
        let c = NodalCurve::smooth(vec![pt(2, 1), pt(-3, 0), pt(7, 5), pt(1, 1)], 1, 0.0).unwrap();
        let n = normalize_component(&c, 0).unwrap();
        assert!(is_normalized(&n, 0));
    }

    #[test]
    fn cross_ratios_unchanged() {
        let c = NodalCurve::smooth(vec![pt(2, 1), pt(-3, 0), pt(7, 5), pt(1, 1), pt(0, 9)], 1, 0.0)
            .unwrap();
        let n = normalize_component(&c, 0).unwrap();
        for (i, j, m, l) in [(1u32, 2u32, 3u32, 4u32), (1, 2, 4, 5), (2, 3, 4, 5)] {
            let a = c.cross_ratio_nodal(i, j, m, l).unwrap();
            let b = n.cross_ratio_nodal(i, j, m, l).unwrap();
            assert!(a.coincides(&b, 0.0));
        }
    }

    #[test]
    fn too_few_points_error() {
        // unstable two-vertex curve: component 1 has 2 special points
        let tree = crate::tree::LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 1)])
            .unwrap();
        let nodal = BTreeMap::from([
            ((0, 1), ProjPoint::infinity()),
            ((1, 0), ProjPoint::infinity()),
        ]);
        let marked = BTreeMap::from([(1, pt(0, 0)), (2, pt(1, 0)), (3, pt(0, 0))]);
        let c = NodalCurve::new(tree, nodal, marked, 0.0).unwrap();
        assert_eq!(
            normalize_component(&c, 1).unwrap_err(),
            CurveError::TooFewSpecialPoints(1)
        );
    }
}
