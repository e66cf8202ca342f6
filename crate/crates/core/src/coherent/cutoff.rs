//! Cutoff profiles around the degenerate cross-ratio values.

use serde::{Deserialize, Serialize};

use crate::curve::ProjPoint;

/// A bump supported on three chordal disks around 0, 1, inf: identically 1
/// within radius `rho/2` of each, 0 outside radius `rho`, glued by a
/// polynomial smoothstep. Order `p` gives a `C^{p-1}` profile.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Cutoff {
    pub radius: f64,
    pub order: usize,
}

pub const DEFAULT_CUTOFF_RADIUS: f64 = 0.1;
pub const DEFAULT_SMOOTHSTEP_ORDER: usize = 3;

impl Default for Cutoff {
    fn default() -> Self {
        Self {
            radius: DEFAULT_CUTOFF_RADIUS,
            order: DEFAULT_SMOOTHSTEP_ORDER,
        }
    }
}

impl Cutoff {
    pub fn new(radius: f64, order: usize) -> Self {
        assert!(
            radius > 0.0 && radius < 0.25,
            "cutoff radius must lie in (0, 1/4)"
        );
        assert!(order >= 1);
        Self { radius, order }
    }

    /// Chordal distance from `w` to the nearest of 0, 1, inf.
    pub fn distance_to_degenerate(w: &ProjPoint<f64>) -> f64 {
        let d0 = w.chordal(&ProjPoint::zero());
        let d1 = w.chordal(&ProjPoint::one());
        let dinf = w.chordal(&ProjPoint::infinity());
        d0.min(d1).min(dinf)
    }

    /// The cutoff value at a sphere point.
    pub fn chi(&self, w: &ProjPoint<f64>) -> f64 {
        self.chi_at_distance(Self::distance_to_degenerate(w))
    }

    pub fn chi_at_distance(&self, d: f64) -> f64 {
        let half = self.radius / 2.0;
        if d <= half {
            1.0
        } else if d >= self.radius {
            0.0
        } else {
            1.0 - smoothstep(self.order, (d - half) / half)
        }
    }

    /// Is the point inside the support (the union of the three disks)?
    pub fn in_support(&self, w: &ProjPoint<f64>) -> bool {
        Self::distance_to_degenerate(w) < self.radius
    }
}

/// Polynomial smoothstep of order `p`: degree `2p - 1`, fixing 0 and 1
/// with `p - 1` vanishing derivatives at both ends.
pub fn smoothstep(order: usize, t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    match order {
        1 => t,
        _ => {
            // S_p(t) = t^p * sum_{k=0}^{p-1} C(p-1+k, k) C(2p-1, p-1-k) (-t)^k
            let p = order;
            let mut sum = 0.0;
            for k in 0..p {
                let c1 = binomial(p - 1 + k, k);
                let c2 = binomial(2 * p - 1, p - 1 - k);
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sum += sign * (c1 * c2) as f64 * t.powi(k as i32);
            }
            t.powi(p as i32) * sum
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}
