//! Closed-form expression trees for stratum data.
//!
//! A `XiFunction` is a vector-valued function of the cross-ratio
//! coordinates of one normalized stratum, given per component as an
//! expression tree. Compact support inside the coordinate domain is
//! obtained through `Bump` nodes (chordal bumps around a center value);
//! everything is serializable for the CLI.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cutoff::smoothstep;
use crate::curve::ProjPoint;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Const(f64),
    /// A real coordinate extracted from cross-ratio coordinate `index`.
    Coord { index: usize, part: CoordPart },
    /// Smooth bump in the chordal distance between coordinate `index` and
    /// a fixed center: 1 at the center, 0 at distance >= `radius`.
    Bump {
        index: usize,
        center: SpherePoint,
        radius: f64,
        order: usize,
    },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CoordPart {
    Re,
    Im,
    /// Squared chordal distance from 0 (bounded, defined at infinity).
    ChordalAbs,
}

/// A point of the sphere in JSON-friendly form.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SpherePoint {
    Finite([f64; 2]),
    Infinity(InfinityTag),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub enum InfinityTag {
    #[serde(rename = "inf")]
    Inf,
}

impl SpherePoint {
    pub fn to_point(self) -> ProjPoint<f64> {
        match self {
            SpherePoint::Finite([re, im]) => ProjPoint::finite(Complex64::new(re, im)),
            SpherePoint::Infinity(_) => ProjPoint::infinity(),
        }
    }
}

impl Expr {
    pub fn eval(&self, coords: &[ProjPoint<f64>]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Coord { index, part } => {
                let w = &coords[*index];
                match part {
                    CoordPart::Re => w.value(1e-12).map_or(0.0, |z| z.re),
                    CoordPart::Im => w.value(1e-12).map_or(0.0, |z| z.im),
                    CoordPart::ChordalAbs => {
                        let d = w.chordal(&ProjPoint::zero());
                        d * d
                    }
                }
            }
            Expr::Bump {
                index,
                center,
                radius,
                order,
            } => {
                let d = coords[*index].chordal(&center.to_point());
                if d >= *radius {
                    0.0
                } else {
                    1.0 - smoothstep(*order, d / radius)
                }
            }
            Expr::Add(a, b) => a.eval(coords) + b.eval(coords),
            Expr::Sub(a, b) => a.eval(coords) - b.eval(coords),
            Expr::Mul(a, b) => a.eval(coords) * b.eval(coords),
            Expr::Neg(a) => -a.eval(coords),
        }
    }

    pub fn bump(index: usize, center: Complex64, radius: f64) -> Self {
        Expr::Bump {
            index,
            center: SpherePoint::Finite([center.re, center.im]),
            radius,
            order: 3,
        }
    }

    pub fn scaled(self, c: f64) -> Self {
        Expr::Mul(Box::new(Expr::Const(c)), Box::new(self))
    }
}

/// Vector-valued stratum function: one expression per target component.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct XiFunction {
    pub components: Vec<Expr>,
}

impl XiFunction {
    pub fn new(components: Vec<Expr>) -> Self {
        Self { components }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            components: vec![Expr::Const(0.0); dim],
        }
    }

    /// A product of bumps around the given coordinate centers, scaled by a
    /// constant vector: compactly supported near one normalized tuple.
    pub fn bump_at(centers: &[Complex64], radius: f64, values: &[f64]) -> Self {
        let components = values
            .iter()
            .map(|&v| {
                let mut acc = Expr::Const(v);
                for (i, c) in centers.iter().enumerate() {
                    acc = Expr::Mul(Box::new(acc), Box::new(Expr::bump(i, *c, radius)));
                }
                acc
            })
            .collect();
        Self { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, coords: &[ProjPoint<f64>]) -> Vec<f64> {
        self.components.iter().map(|e| e.eval(coords)).collect()
    }

    /// Linear combination `a * self + b * other`, as expression trees.
    pub fn linear_combination(&self, a: f64, other: &XiFunction, b: f64) -> XiFunction {
        assert_eq!(self.dim(), other.dim());
        XiFunction {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(x, y)| {
                    Expr::Add(
                        Box::new(x.clone().scaled(a)),
                        Box::new(y.clone().scaled(b)),
                    )
                })
                .collect(),
        }
    }
}
