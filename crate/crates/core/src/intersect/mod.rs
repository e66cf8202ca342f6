//! Local and global intersection numbers of explicit holomorphic maps
//! with complex hypersurfaces: vanishing orders, winding-number indices,
//! total counts with exact certificates, and normal jets.

mod jets;
mod nodal;
mod poly;
mod total;
mod winding;

pub use jets::{
    local_intersection_number, normal_jet, normal_norm_f64, tangency_order, AnalyticMapModel,
    JetError, NormalJet, PolyMap,
};
pub use nodal::{LocalIndex, MapComponent, NodalAnalyticMap, NodalMapError};
pub use poly::{cc, cc_to_f64, CPoly, MultiPoly, CC};
pub use total::{
    total_intersection, HPoly, Hypersurface, IntersectError, RationalMap, RootMultiplicity,
    TotalIntersection,
};
pub use winding::{winding_number, winding_number_with, WindingError, DEFAULT_NODES};

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_traits::One;

    /// Winding numbers agree with exact vanishing orders on polynomial
    /// inputs, dual-route style.
    #[test]
    fn winding_matches_vanishing_order() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(314);
        for _ in 0..50 {
            // random polynomial with a root of known order at a random point
            let order = rng.gen_range(1..=4usize);
            let z0 = cc(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let mut p = CPoly::one();
            let root_factor = CPoly::new(vec![-z0.clone(), CC::one()]);
            for _ in 0..order {
                p = p.mul(&root_factor);
            }
            // multiply by a factor with distant roots
            p = p.mul(&CPoly::new(vec![cc(17, 3), cc(1, 1), CC::one()]));
            assert_eq!(p.vanishing_order(&z0), Some(order));
            let f = move |z: Complex64| p.eval_f64(z);
            let center = cc_to_f64(&z0);
            let w = winding_number(&f, center, 0.25).unwrap();
            assert_eq!(w as usize, order);
        }
    }
}
