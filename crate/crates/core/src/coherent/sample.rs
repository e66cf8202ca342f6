//! Seeded samplers for curves in prescribed strata.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use super::CoherentError;
use crate::curve::{NodalCurve, ProjPoint, StableDecomposition};
use crate::tree::{Label, LabelledTree, VertexId};

pub const SAMPLE_SEPARATION: f64 = 0.08;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point(rng: &mut ChaCha8Rng) -> ProjPoint<f64> {
    ProjPoint::finite(Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
}

fn distinct_points(rng: &mut ChaCha8Rng, count: usize, min_sep: f64) -> Vec<ProjPoint<f64>> {
    'outer: loop {
        let pts: Vec<ProjPoint<f64>> = (0..count).map(|_| random_point(rng)).collect();
        for i in 0..count {
            for j in (i + 1)..count {
                if pts[i].chordal(&pts[j]) < min_sep {
                    continue 'outer;
                }
            }
        }
        return pts;
    }
}

/// A random stable curve in the stratum of the given decomposition: the
/// distinguished component carries `z_0`, the singleton labels, and one
/// node per larger class; each larger class lives on its own bubble.
pub fn sample_stratum_curve(
    dec: &StableDecomposition,
    rng: &mut ChaCha8Rng,
) -> Result<NodalCurve<f64>, CoherentError> {
    let k = dec.k();
    let alpha0: VertexId = 0;
    let mut vertices = vec![alpha0];
    let mut edges = Vec::new();
    let mut labels: Vec<(Label, VertexId)> = vec![(0, alpha0)];
    let mut bubbles: Vec<(VertexId, Vec<Label>)> = Vec::new();
    let mut next_vertex: VertexId = 1;
    for part in dec.parts().skip(1) {
        if part.len() == 1 {
            labels.push((*part.iter().next().unwrap(), alpha0));
        } else {
            let v = next_vertex;
            next_vertex += 1;
            vertices.push(v);
            edges.push((alpha0, v));
            for &l in part {
                labels.push((l, v));
            }
            bubbles.push((v, part.iter().copied().collect()));
        }
    }
    let tree = LabelledTree::new(vertices, edges, labels)?;
    debug_assert_eq!(tree.max_label(), k);

    // anchor points on the distinguished component: z0, singletons, nodes
    let singles: Vec<Label> = dec
        .parts()
        .skip(1)
        .filter(|p| p.len() == 1)
        .map(|p| *p.iter().next().unwrap())
        .collect();
    let anchors = distinct_points(rng, 1 + singles.len() + bubbles.len(), SAMPLE_SEPARATION);
    let mut marked: BTreeMap<Label, ProjPoint<f64>> = BTreeMap::new();
    let mut nodal: BTreeMap<(VertexId, VertexId), ProjPoint<f64>> = BTreeMap::new();
    marked.insert(0, anchors[0].clone());
    for (i, &l) in singles.iter().enumerate() {
        marked.insert(l, anchors[1 + i].clone());
    }
    for (b, (v, part)) in bubbles.iter().enumerate() {
        nodal.insert((alpha0, *v), anchors[1 + singles.len() + b].clone());
        // bubble chart: node at infinity, labels at random distinct points
        nodal.insert((*v, alpha0), ProjPoint::infinity());
        let pts = distinct_points(rng, part.len(), SAMPLE_SEPARATION);
        for (l, p) in part.iter().zip(pts) {
            marked.insert(*l, p);
        }
    }
    Ok(NodalCurve::new(tree, nodal, marked, 1e-12)?)
}

/// A smooth curve within chordal distance about `spread` of a minimal
/// (three-part) stratum: the labels `1..=k` split into two clusters of
/// chordal size `spread` around well-separated anchors.
pub fn sample_near_minimal_stratum(
    k: Label,
    rng: &mut ChaCha8Rng,
    spread: f64,
) -> Result<NodalCurve<f64>, CoherentError> {
    assert!(k >= 2);
    let split = rng.gen_range(1..k); // labels 1..=split vs split+1..=k
    let anchors = distinct_points(rng, 3, 0.8);
    let mut points = vec![anchors[0].clone()];
    for l in 1..=k {
        let anchor = if l <= split { &anchors[1] } else { &anchors[2] };
        let z = anchor.value(1e-12).unwrap();
        let offset = Complex64::new(
            rng.gen_range(-spread..spread),
            rng.gen_range(-spread..spread),
        );
        points.push(ProjPoint::finite(z + offset));
    }
    Ok(NodalCurve::smooth(points, 0, 1e-12)?)
}

/// A random smooth curve with `k + 1` marked points `z_0, ..., z_k`.
pub fn sample_smooth_curve(k: Label, rng: &mut ChaCha8Rng) -> Result<NodalCurve<f64>, CoherentError> {
    let points = distinct_points(rng, k as usize + 1, SAMPLE_SEPARATION);
    Ok(NodalCurve::smooth(points, 0, 1e-12)?)
}

/// Perturb the bubble-internal marked points of an in-stratum curve,
/// keeping the distinguished component untouched. The result lies in the
/// same stratum with the same projection.
pub fn perturb_bubble_interiors(
    curve: &NodalCurve<f64>,
    rng: &mut ChaCha8Rng,
) -> Result<NodalCurve<f64>, CoherentError> {
    let tree = curve.tree().clone();
    let alpha0 = tree.label_vertex(0).expect("curve carries label 0");
    let mut nodal = BTreeMap::new();
    for (a, b) in tree.edges() {
        for (x, y) in [(a, b), (b, a)] {
            nodal.insert((x, y), curve.nodal_point(x, y).unwrap().clone());
        }
    }
    let mut marked = BTreeMap::new();
    let mut by_vertex: BTreeMap<VertexId, Vec<Label>> = BTreeMap::new();
    for (l, v) in tree.labels() {
        by_vertex.entry(v).or_default().push(l);
    }
    for (v, labels) in by_vertex {
        if v == alpha0 {
            for l in labels {
                marked.insert(l, curve.marked_point(l).unwrap().clone());
            }
        } else {
            let pts = distinct_points(rng, labels.len(), SAMPLE_SEPARATION);
            for (l, p) in labels.into_iter().zip(pts) {
                marked.insert(l, p);
            }
        }
    }
    Ok(NodalCurve::new(tree, nodal, marked, curve.tol())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stratum_sampler_lands_in_stratum() {
        let mut rng = seeded_rng(5);
        let dec = StableDecomposition::new(
            vec![vec![0], vec![1, 3], vec![2], vec![4, 5]],
            5,
        )
        .unwrap();
        for _ in 0..20 {
            let c = sample_stratum_curve(&dec, &mut rng).unwrap();
            assert!(c.is_stable());
            assert_eq!(c.stable_decomposition().unwrap(), dec);
        }
    }

    #[test]
    fn near_minimal_sampler_is_smooth_and_clustered() {
        let mut rng = seeded_rng(11);
        for _ in 0..10 {
            let c = sample_near_minimal_stratum(5, &mut rng, 1e-3).unwrap();
            assert_eq!(c.tree().vertex_count(), 1);
            let d = c.stable_decomposition().unwrap();
            // smooth curve: z0 plus five marked points, all distinct
            assert_eq!(d.len(), 6);
        }
    }

    #[test]
    fn perturbation_preserves_stratum_and_projection() {
        let mut rng = seeded_rng(23);
        let dec = StableDecomposition::new(vec![vec![0], vec![1, 2], vec![3], vec![4]], 4)
            .unwrap();
        let c = sample_stratum_curve(&dec, &mut rng).unwrap();
        let p = perturb_bubble_interiors(&c, &mut rng).unwrap();
        assert_eq!(p.stable_decomposition().unwrap(), dec);
        let alpha0 = c.tree().label_vertex(0).unwrap();
        for l in [0u32, 3, 4] {
            assert!(c
                .resolve(alpha0, l)
                .unwrap()
                .coincides(p.resolve(alpha0, l).unwrap(), 1e-12));
        }
    }
}
