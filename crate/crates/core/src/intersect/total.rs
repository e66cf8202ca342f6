//! Global intersection counts of rational curves with projective
//! hypersurfaces, computed two independent ways.
//!
//! A rational map is given by homogeneous coordinate polynomials of a
//! common degree `d` in `(s, t)`; a hypersurface by a homogeneous
//! polynomial of degree `D`. The pullback is homogeneous of degree `d D`,
//! and the intersection count is assembled structurally, as the sum of
//! root multiplicities from a square-free decomposition (plus the point at
//! infinity via a valuation), and arithmetically as `d * D`. The two
//! routes must agree exactly.

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{CPoly, MultiPoly, CC};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum IntersectError {
    #[error("rational map needs at least two coordinates")]
    TooFewCoordinates,
    #[error("coordinate polynomials must share one degree; found {0} and {1}")]
    MixedDegrees(usize, usize),
    #[error("all coordinate polynomials vanish identically")]
    ZeroMap,
    #[error("hypersurface polynomial must be homogeneous and nonzero")]
    BadHypersurface,
    #[error("hypersurface arity {have} does not match map coordinates {want}")]
    ArityMismatch { have: usize, want: usize },
    #[error("the image of the map is contained in the hypersurface")]
    ContainedInHypersurface,
    #[error("structural count {structural} disagrees with degree arithmetic {arithmetic}")]
    RouteMismatch { structural: usize, arithmetic: usize },
}

/// Homogeneous polynomial in `(s, t)`: `coeffs[i]` multiplies
/// `s^i t^(d-i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoly {
    pub coeffs: Vec<CC>,
}

impl HPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![CC::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "degree mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.clone() + b.clone();
        }
    }

    fn one() -> Self {
        Self {
            coeffs: vec![CC::one()],
        }
    }

    /// Strip `s^a t^b` common factors and the univariate gcd content.
    fn affine_part(&self) -> (usize, usize, CPoly) {
        let d = self.degree();
        let first = self.coeffs.iter().position(|c| !c.is_zero());
        let last = self.coeffs.iter().rposition(|c| !c.is_zero());
        match (first, last) {
            (Some(a), Some(top)) => {
                let t_val = d - top;
                let core = CPoly::new(self.coeffs[a..=top].to_vec());
                (a, t_val, core)
            }
            _ => (0, 0, CPoly::zero()),
        }
    }
}

/// A rational map `CP^1 -> CP^n` in homogeneous coordinates.
#[derive(Debug, Clone)]
pub struct RationalMap {
    pub coordinates: Vec<HPoly>,
}

impl RationalMap {
    pub fn new(coordinates: Vec<HPoly>) -> Result<Self, IntersectError> {
        if coordinates.len() < 2 {
            return Err(IntersectError::TooFewCoordinates);
        }
        let d = coordinates[0].degree();
        for c in &coordinates {
            if c.degree() != d {
                return Err(IntersectError::MixedDegrees(d, c.degree()));
            }
        }
        if coordinates.iter().all(HPoly::is_zero) {
            return Err(IntersectError::ZeroMap);
        }
        Ok(Self { coordinates })
    }

    pub fn degree(&self) -> usize {
        self.coordinates[0].degree()
    }

    /// Remove the common factor of all coordinates (monomial part plus the
    /// univariate gcd) so the map is given by coprime polynomials. Returns
    /// the reduced map and the degree removed.
    pub fn reduced(&self) -> (RationalMap, usize) {
        let parts: Vec<(usize, usize, CPoly)> = self
            .coordinates
            .iter()
            .map(HPoly::affine_part)
            .collect();
        let s_common = parts
            .iter()
            .filter(|(_, _, p)| !p.is_zero())
            .map(|(a, _, _)| *a)
            .min()
            .unwrap_or(0);
        let t_common = parts
            .iter()
            .filter(|(_, _, p)| !p.is_zero())
            .map(|(_, b, _)| *b)
            .min()
            .unwrap_or(0);
        let mut gcd = CPoly::zero();
        for (_, _, core) in &parts {
            if core.is_zero() {
                continue;
            }
            gcd = if gcd.is_zero() {
                core.monic()
            } else {
                gcd.gcd(core)
            };
        }
        let gcd_deg = gcd.degree().unwrap_or(0);
        let removed = s_common + t_common + gcd_deg;
        if removed == 0 {
            return (self.clone(), 0);
        }
        let new_degree = self.degree() - removed;
        let coords = self
            .coordinates
            .iter()
            .zip(&parts)
            .map(|(_, (a, _, core))| {
                if core.is_zero() {
                    return HPoly {
                        coeffs: vec![CC::zero(); new_degree + 1],
                    };
                }
                let quotient = core.div_rem(&gcd).0;
                let mut coeffs = vec![CC::zero(); new_degree + 1];
                let shift = a - s_common;
                for (i, c) in quotient.coeffs().iter().enumerate() {
                    coeffs[shift + i] = c.clone();
                }
                HPoly { coeffs }
            })
            .collect();
        (RationalMap { coordinates: coords }, removed)
    }
}

/// A projective hypersurface cut out by a homogeneous polynomial.
#[derive(Debug, Clone)]
pub struct Hypersurface {
    pub polynomial: MultiPoly,
}

impl Hypersurface {
    pub fn new(polynomial: MultiPoly) -> Result<Self, IntersectError> {
        if polynomial.is_zero() || !polynomial.is_homogeneous() {
            return Err(IntersectError::BadHypersurface);
        }
        Ok(Self { polynomial })
    }

    /// The coordinate hyperplane `x_index = 0` in `P^{vars-1}`.
    pub fn coordinate_hyperplane(vars: usize, index: usize) -> Self {
        let mut expo = vec![0u32; vars];
        expo[index] = 1;
        Self {
            polynomial: MultiPoly::new(vars, [(expo, CC::one())]),
        }
    }

    pub fn degree(&self) -> usize {
        self.polynomial.total_degree().unwrap_or(0) as usize
    }
}

/// One root of the pullback with its multiplicity; the location is
/// approximate (diagnostic), the multiplicity exact.
#[derive(Debug, Clone)]
pub struct RootMultiplicity {
    pub location: Option<Complex64>,
    pub at_infinity: bool,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct TotalIntersection {
    /// Sum of local multiplicities from the square-free decomposition.
    pub structural: usize,
    /// `deg(f) * deg(Y)` after reducing the map.
    pub arithmetic: usize,
    pub map_degree: usize,
    pub hypersurface_degree: usize,
    pub removed_common_degree: usize,
    pub roots: Vec<RootMultiplicity>,
}

/// Total intersection number of a rational curve with a hypersurface,
/// computed along both routes; errors if they disagree (they cannot, once
/// the gcd machinery is correct) or if the curve lies inside the
/// hypersurface.
pub fn total_intersection(
    map: &RationalMap,
    hypersurface: &Hypersurface,
) -> Result<TotalIntersection, IntersectError> {
    if hypersurface.polynomial.vars != map.coordinates.len() {
        return Err(IntersectError::ArityMismatch {
            have: hypersurface.polynomial.vars,
            want: map.coordinates.len(),
        });
    }
    let (reduced, removed) = map.reduced();
    let d = reduced.degree();
    let big_d = hypersurface.degree();

    // pullback: substitute the coordinates into the defining polynomial
    let target_degree = d * big_d;
    let mut pullback = HPoly {
        coeffs: vec![CC::zero(); target_degree + 1],
    };
    for (expo, c) in &hypersurface.polynomial.terms {
        let mut term = HPoly::one();
        for (v, &e) in expo.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&reduced.coordinates[v]);
            }
        }
        let mut padded = vec![CC::zero(); target_degree + 1];
        for (i, coeff) in term.coeffs.iter().enumerate() {
            padded[i] = coeff.clone() * c.clone();
        }
        pullback.add_assign(&HPoly { coeffs: padded });
    }
    if pullback.is_zero() {
        return Err(IntersectError::ContainedInHypersurface);
    }

    // finite roots: square-free decomposition of the affine part
    let (s_val, t_val, core) = pullback.affine_part();
    let mut roots = Vec::new();
    let mut structural = 0usize;
    if s_val > 0 {
        // root at [0 : 1], i.e. u = 0, captured by the monomial factor
        structural += s_val;
        roots.push(RootMultiplicity {
            location: Some(Complex64::new(0.0, 0.0)),
            at_infinity: false,
            multiplicity: s_val,
        });
    }
    for (factor, mult) in core.square_free_decomposition() {
        let locs = factor.approx_roots();
        let deg = factor.degree().unwrap_or(0);
        structural += mult * deg;
        for i in 0..deg {
            roots.push(RootMultiplicity {
                location: locs.get(i).copied(),
                at_infinity: false,
                multiplicity: mult,
            });
        }
    }
    if t_val > 0 {
        structural += t_val;
        roots.push(RootMultiplicity {
            location: None,
            at_infinity: true,
            multiplicity: t_val,
        });
    }

    let arithmetic = d * big_d;
    if structural != arithmetic {
        return Err(IntersectError::RouteMismatch {
            structural,
            arithmetic,
        });
    }
    Ok(TotalIntersection {
        structural,
        arithmetic,
        map_degree: d,
        hypersurface_degree: big_d,
        removed_common_degree: removed,
        roots,
    })
}
