//! Finite-dimensional model of coherency: cutoffs on cross ratios,
//! extension operators for compactly supported stratum data, assembled
//! coherent maps, and the collapse of subtrees.

mod cutoff;
mod expr;
mod extend;
mod sample;

pub use cutoff::{smoothstep, Cutoff, DEFAULT_CUTOFF_RADIUS, DEFAULT_SMOOTHSTEP_ORDER};
pub use expr::{CoordPart, Expr, SpherePoint, XiFunction};
pub use extend::{
    induced_decomposition, project_to_stratum, tuple_coordinates, type_one_clearance,
    CoherentError, CoherentMapModel, ExtensionOperator, ExtensionValue, ModelTerm,
    StableDecompositionData,
};
pub use sample::{
    perturb_bubble_interiors, sample_near_minimal_stratum, sample_smooth_curve,
    sample_stratum_curve, seeded_rng, SAMPLE_SEPARATION,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{NodalCurve, StableDecomposition};
    use crate::tree::LabelledTree;
    use num_complex::Complex64;
    use std::collections::BTreeSet;

    fn bump_xi_for(dec: &StableDecomposition, curve: &NodalCurve<f64>, dim: usize) -> XiFunction {
        // a bump centered at the curve's own coordinates
        let op = ExtensionOperator::new(dec, Cutoff::default(), XiFunction::zero(dim)).unwrap();
        let coords = op.coordinates(curve).unwrap();
        let centers: Vec<Complex64> = coords.iter().map(|w| w.value(1e-12).unwrap()).collect();
        let values: Vec<f64> = (0..dim).map(|i| 1.0 + i as f64).collect();
        XiFunction::bump_at(&centers, 0.04, &values)
    }

    /// Sample until every type I cross ratio stays clear of the outer
    /// cutoff disks (the support condition of the extension operators).
    fn well_supported_sample(
        dec: &StableDecomposition,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> NodalCurve<f64> {
        let cut = Cutoff::default();
        loop {
            let c = sample_stratum_curve(dec, rng).unwrap();
            if type_one_clearance(dec, &c).unwrap() > cut.radius * 2.6 {
                return c;
            }
        }
    }

    #[test]
    fn restriction_identity_on_stratum() {
        let mut rng = seeded_rng(71);
        let dec =
            StableDecomposition::new(vec![vec![0], vec![1, 2], vec![3], vec![4]], 4).unwrap();
        for _ in 0..25 {
            let c = well_supported_sample(&dec, &mut rng);
            let xi = bump_xi_for(&dec, &c, 3);
            let op = ExtensionOperator::new(&dec, Cutoff::default(), xi.clone()).unwrap();
            let extended = op.evaluate(&c).unwrap();
            // xi o p_I computed through the explicit projection tuple
            let tuple = project_to_stratum(&c, &dec).unwrap();
            let coords = tuple_coordinates(&tuple).unwrap();
            let direct = xi.eval(&coords);
            for (a, b) in extended.value.iter().zip(&direct) {
                assert!((a - b).abs() < 1e-12, "extension {a} vs direct {b}");
            }
            // the bump is centered at the curve: the value is the peak
            assert!(extended.value[0] > 0.9);
        }
    }

    #[test]
    fn vanishes_on_non_refining_strata() {
        let mut rng = seeded_rng(72);
        let i = StableDecomposition::new(vec![vec![0], vec![1, 2], vec![3], vec![4]], 4).unwrap();
        let j = StableDecomposition::new(vec![vec![0], vec![1, 3], vec![2], vec![4]], 4).unwrap();
        assert!(!j.refines(&i));
        for _ in 0..25 {
            let c_i = well_supported_sample(&i, &mut rng);
            let xi = bump_xi_for(&i, &c_i, 2);
            let op = ExtensionOperator::new(&i, Cutoff::default(), xi).unwrap();
            let c_j = sample_stratum_curve(&j, &mut rng).unwrap();
            let v = op.evaluate(&c_j).unwrap();
            assert_eq!(v.value, vec![0.0, 0.0]);
            assert_eq!(v.factor, 0.0);
        }
    }

    #[test]
    fn zero_data_extends_to_zero() {
        let mut rng = seeded_rng(73);
        let dec =
            StableDecomposition::new(vec![vec![0], vec![1, 2], vec![3], vec![4]], 4).unwrap();
        let op = ExtensionOperator::new(&dec, Cutoff::default(), XiFunction::zero(4)).unwrap();
        for _ in 0..10 {
            let c = sample_smooth_curve(4, &mut rng).unwrap();
            assert_eq!(op.evaluate(&c).unwrap().value, vec![0.0; 4]);
        }
    }

    #[test]
    fn linearity_in_the_data() {
        let mut rng = seeded_rng(74);
        let dec =
            StableDecomposition::new(vec![vec![0], vec![1, 2], vec![3], vec![4]], 4).unwrap();
        let c = well_supported_sample(&dec, &mut rng);
        let xi1 = bump_xi_for(&dec, &c, 2);
        let perturbed = perturb_bubble_interiors(&c, &mut rng).unwrap();
        let xi2 = bump_xi_for(&dec, &perturbed, 2);
        let combo = xi1.linear_combination(2.5, &xi2, -1.25);
        let op1 = ExtensionOperator::new(&dec, Cutoff::default(), xi1).unwrap();
        let op2 = ExtensionOperator::new(&dec, Cutoff::default(), xi2).unwrap();
        let op_combo = ExtensionOperator::new(&dec, Cutoff::default(), combo).unwrap();
        for _ in 0..10 {
            let probe = sample_smooth_curve(4, &mut rng).unwrap();
            let v1 = op1.evaluate(&probe).unwrap();
            let v2 = op2.evaluate(&probe).unwrap();
            let vc = op_combo.evaluate(&probe).unwrap();
            for i in 0..2 {
                let expect = 2.5 * v1.value[i] - 1.25 * v2.value[i];
                assert!((vc.value[i] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn condition_a_vanishing_near_minimal_strata() {
        let mut rng = seeded_rng(75);
        let tree = LabelledTree::single_vertex(1, 5);
        let mut model = CoherentMapModel::new(&tree, 2);
        // the one-vertex tree induces the discrete decomposition
        let c_ref = sample_smooth_curve(5, &mut rng).unwrap();
        let dec = induced_decomposition(&tree, 0).unwrap();
        let xi = bump_xi_for(&dec, &c_ref, 2);
        model.add_term(0, Cutoff::default(), xi).unwrap();
        for _ in 0..50 {
            let near = sample_near_minimal_stratum(5, &mut rng, 5e-4).unwrap();
            let v = model.evaluate(&near).unwrap();
            assert_eq!(v, vec![0.0, 0.0]);
        }
    }

    #[test]
    fn condition_b_depends_only_on_projection() {
        let mut rng = seeded_rng(76);
        let i = StableDecomposition::new(vec![vec![0], vec![1, 2], vec![3], vec![4]], 4).unwrap();
        // data attached to the discrete decomposition, evaluated on the
        // stratum of i with varying bubble interiors
        let smooth = sample_smooth_curve(4, &mut rng).unwrap();
        let discrete = StableDecomposition::discrete(4);
        let xi = bump_xi_for(&discrete, &smooth, 2);
        let op = ExtensionOperator::new(&discrete, Cutoff::default(), xi).unwrap();
        let base = sample_stratum_curve(&i, &mut rng).unwrap();
        let v0 = op.evaluate(&base).unwrap();
        for _ in 0..20 {
            let p = perturb_bubble_interiors(&base, &mut rng).unwrap();
            let v = op.evaluate(&p).unwrap();
            for (a, b) in v.value.iter().zip(&v0.value) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn star_shaped_factor_is_a_contraction() {
        let mut rng = seeded_rng(77);
        let dec =
            StableDecomposition::new(vec![vec![0], vec![1, 2], vec![3], vec![4]], 4).unwrap();
        let c = well_supported_sample(&dec, &mut rng);
        let xi = bump_xi_for(&dec, &c, 2);
        let op = ExtensionOperator::new(&dec, Cutoff::default(), xi).unwrap();
        for _ in 0..40 {
            let probe = sample_smooth_curve(4, &mut rng).unwrap();
            let v = op.evaluate(&probe).unwrap();
            assert!((0.0..=1.0).contains(&v.factor));
            for (out, data) in v.value.iter().zip(&v.data_value) {
                assert_eq!(*out, *data * v.factor);
            }
        }
    }

    #[test]
    fn support_violation_reports_the_cross_ratio() {
        let mut rng = seeded_rng(80);
        let dec = StableDecomposition::discrete(4);
        // data alive exactly where the first coordinate sits inside the
        // outer cutoff disk around 0
        let xi = XiFunction::new(vec![Expr::bump(0, Complex64::new(0.0, 0.0), 0.15)]);
        let op = ExtensionOperator::new(&dec, Cutoff::default(), xi).unwrap();
        let mut violated = false;
        for _ in 0..200 {
            let c = sample_smooth_curve(4, &mut rng).unwrap();
            match op.evaluate(&c) {
                Err(CoherentError::SupportViolation(i, j, m)) => {
                    assert_eq!((i, j, m), (1, 2, 3));
                    violated = true;
                    break;
                }
                Ok(_) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(violated, "ill-supported data never tripped the check");
    }

    #[test]
    fn collapse_empty_subtree_is_identity() {
        let tree = LabelledTree::single_vertex(1, 5);
        let model = CoherentMapModel::new(&tree, 2);
        let same = model.collapse_subtree(&BTreeSet::new()).unwrap();
        assert_eq!(same.terms.len(), model.terms.len());
        assert_eq!(same.tree_labels, model.tree_labels);
    }

    #[test]
    fn collapse_drops_subtree_strata_and_relabels() {
        // tree: 0 ({1,2,3}) -- 1 ({4,5})
        let tree = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 0), (4, 1), (5, 1)])
            .unwrap();
        let mut rng = seeded_rng(78);
        let mut model = CoherentMapModel::new(&tree, 1);
        let dec0 = induced_decomposition(&tree, 0).unwrap();
        assert_eq!(dec0.len(), 5); // {0},{1},{2},{3},{4,5}
        let c = sample_stratum_curve(&dec0, &mut rng).unwrap();
        let xi = bump_xi_for(&dec0, &c, 1);
        model.add_term(0, Cutoff::default(), xi.clone()).unwrap();
        model.add_term(1, Cutoff::default(), xi).unwrap();

        let collapsed = model.collapse_subtree(&BTreeSet::from([1])).unwrap();
        // label 4 is kept (smallest on the subtree), 5 removed, so k drops to 4
        let new_tree = collapsed.tree().unwrap();
        assert_eq!(new_tree.num_marked(), 4);
        assert_eq!(new_tree.vertex_count(), 1);
        // only the vertex-0 term survives
        assert_eq!(collapsed.terms.len(), 1);
        let dec = collapsed.terms[0]
            .operator
            .decomposition
            .to_decomposition()
            .unwrap();
        // transported decomposition: {0},{1},{2},{3},{4}
        assert_eq!(dec.len(), 5);
        assert!(dec.parts().all(|p| p.len() == 1));
    }

    #[test]
    fn collapsed_map_vanishes_over_collapsed_part() {
        // after collapsing, curves whose z0 bubbles off with the kept label
        // lie near a minimal stratum, where the surviving data vanishes
        let tree = LabelledTree::new([0, 1], [(0, 1)], [(1, 0), (2, 0), (3, 0), (4, 1), (5, 1)])
            .unwrap();
        let mut rng = seeded_rng(79);
        let mut model = CoherentMapModel::new(&tree, 1);
        let dec0 = induced_decomposition(&tree, 0).unwrap();
        let c = sample_stratum_curve(&dec0, &mut rng).unwrap();
        model
            .add_term(0, Cutoff::default(), bump_xi_for(&dec0, &c, 1))
            .unwrap();
        let collapsed = model.collapse_subtree(&BTreeSet::from([1])).unwrap();

        // curve with z0 and the kept label 4 close together: near the
        // stratum where z0 sits over the collapsed subtree
        for trial in 0..20 {
            let spread = 1e-4 * (1.0 + trial as f64);
            let base = sample_smooth_curve(4, &mut rng).unwrap();
            let z0 = base.marked_point(0).unwrap().value(1e-12).unwrap();
            let mut pts = vec![base.marked_point(0).unwrap().clone()];
            for l in 1..=3 {
                pts.push(base.marked_point(l).unwrap().clone());
            }
            pts.push(crate::curve::ProjPoint::finite(
                z0 + Complex64::new(2.0 * spread, -spread),
            ));
            let curve = NodalCurve::smooth(pts, 0, 1e-12).unwrap();
            let v = collapsed.evaluate(&curve).unwrap();
            assert_eq!(v, vec![0.0]);
        }
    }
}
