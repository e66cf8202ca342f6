//! Winding numbers around circles by phase unwrapping.
//!
//! The winding number of a nonvanishing continuous function around a
//! circle is the total change of its argument divided by `2 pi`. With
//! enough nodes every step turns by less than a quarter turn, the wrapped
//! per-step differences sum to exactly the winding, and the result snaps
//! to an integer with a small residual. Node counts double until the step
//! guard holds.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum WindingError {
    #[error("function vanishes on the contour (|h| = {0:.3e} at node {1})")]
    ZeroOnContour(f64, usize),
    #[error("winding sum {0:.4} is not close to an integer (residual {1:.4})")]
    NonIntegerResidual(f64, f64),
    #[error("phase steps stay too large even at {0} nodes")]
    StepsTooLarge(usize),
    #[error("radius must be positive")]
    BadRadius,
}

pub const DEFAULT_NODES: usize = 1 << 12;
const MAX_NODES: usize = 1 << 20;

/// Winding number of `f` along the positively oriented circle of the
/// given center and radius.
pub fn winding_number(
    f: &dyn Fn(Complex64) -> Complex64,
    center: Complex64,
    radius: f64,
) -> Result<i64, WindingError> {
    winding_number_with(f, center, radius, DEFAULT_NODES)
}

pub fn winding_number_with(
    f: &dyn Fn(Complex64) -> Complex64,
    center: Complex64,
    radius: f64,
    start_nodes: usize,
) -> Result<i64, WindingError> {
    if radius <= 0.0 {
        return Err(WindingError::BadRadius);
    }
    let mut nodes = start_nodes.max(16);
    loop {
        match attempt(f, center, radius, nodes) {
            Ok(w) => return Ok(w),
            Err(WindingError::StepsTooLarge(_)) if nodes < MAX_NODES => {
                nodes *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

fn attempt(
    f: &dyn Fn(Complex64) -> Complex64,
    center: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<i64, WindingError> {
    let mut scale: f64 = 0.0;
    let mut values = Vec::with_capacity(nodes + 1);
    for i in 0..=nodes {
        let t = 2.0 * std::f64::consts::PI * (i as f64) / (nodes as f64);
        let z = center + Complex64::from_polar(radius, t);
        let v = f(z);
        scale = scale.max(v.norm());
        values.push(v);
    }
    for (i, v) in values.iter().enumerate() {
        if v.norm() <= 1e-13 * scale.max(f64::MIN_POSITIVE) {
            return Err(WindingError::ZeroOnContour(v.norm(), i));
        }
    }
    let mut total = 0.0;
    for w in values.windows(2) {
        let step = (w[1] / w[0]).arg();
        if step.abs() > std::f64::consts::FRAC_PI_2 {
            return Err(WindingError::StepsTooLarge(nodes));
        }
        total += step;
    }
    let turns = total / (2.0 * std::f64::consts::PI);
    let snapped = turns.round();
    let residual = (turns - snapped).abs();
    if residual > 0.1 {
        return Err(WindingError::NonIntegerResidual(turns, residual));
    }
    Ok(snapped as i64)
}
