//! Exact univariate and multivariate polynomials over the Gaussian
//! rationals.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

pub type CC = Complex<BigRational>;

pub fn cc(re: i64, im: i64) -> CC {
    Complex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

pub fn cc_to_f64(z: &CC) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// Univariate polynomial with exact complex-rational coefficients,
/// ascending degree order, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct CPoly {
    coeffs: Vec<CC>,
}

impl CPoly {
    pub fn new(coeffs: Vec<CC>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![CC::one()],
        }
    }

    pub fn monomial(coeff: CC, degree: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![CC::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> CC {
        self.coeffs.get(i).cloned().unwrap_or_else(CC::zero)
    }

    pub fn coeffs(&self) -> &[CC] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&CC> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &CC) -> CC {
        let mut acc = CC::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn eval_f64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + cc_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * cc(i as i64, 0))
                .collect(),
        )
    }

    /// Taylor shift: coefficients of `p(z0 + u)` as a polynomial in `u`,
    /// by repeated synthetic division.
    pub fn shifted(&self, z0: &CC) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        let mut out = vec![CC::zero(); n];
        for item in out.iter_mut().take(n) {
            // divide rem by (z - z0): remainder is the next Taylor coefficient
            let mut carry = CC::zero();
            for j in (0..rem.len()).rev() {
                let tmp = rem[j].clone() + carry.clone() * z0.clone();
                carry = tmp.clone();
                rem[j] = tmp;
            }
            *item = rem.remove(0);
            if rem.is_empty() {
                break;
            }
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![CC::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &CC) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Exact euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = CC::one() / divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![CC::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap().clone() * lead_inv.clone();
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let sub = divisor.mul(&Self::monomial(factor, shift));
            rem = rem.sub(&sub);
        }
        (Self::new(quot), rem)
    }

    /// Monic gcd by the euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&(CC::one() / l.clone())),
        }
    }

    /// Smallest `m` with a nonzero `m`-th Taylor coefficient at `z0`;
    /// `None` for the zero polynomial.
    pub fn vanishing_order(&self, z0: &CC) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let shifted = self.shifted(z0);
        shifted.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Square-free decomposition (Yun): pairs `(factor, multiplicity)` with
    /// the factors square-free, pairwise coprime, and
    /// `self = lc * prod factor_i ^ mult_i`.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut result = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return result;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1usize;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                result.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        result
    }

    /// Approximate complex roots of the square-free part
    /// (Durand-Kerner; display/diagnostic quality).
    pub fn approx_roots(&self) -> Vec<Complex64> {
        let square_free = self
            .square_free_decomposition()
            .into_iter()
            .fold(CPoly::one(), |acc, (p, _)| acc.mul(&p));
        let p = if square_free.degree().unwrap_or(0) == 0 {
            self.monic()
        } else {
            square_free
        };
        let Some(n) = p.degree() else {
            return Vec::new();
        };
        if n == 0 {
            return Vec::new();
        }
        let coeffs: Vec<Complex64> = p.coeffs.iter().map(cc_to_f64).collect();
        let lead = coeffs[n];
        let mut roots: Vec<Complex64> = (0..n)
            .map(|i| Complex64::from_polar(0.4 + 0.9 * (i as f64 / n as f64), 2.1 * i as f64 + 0.7))
            .collect();
        for _ in 0..300 {
            let mut next = roots.clone();
            for i in 0..n {
                let mut denom = lead;
                for (j, r) in roots.iter().enumerate() {
                    if j != i {
                        denom *= roots[i] - r;
                    }
                }
                if denom.norm() < 1e-300 {
                    continue;
                }
                next[i] = roots[i] - p.eval_f64(roots[i]) / denom;
            }
            roots = next;
        }
        roots
    }
}

/// Multivariate polynomial (sparse) over the Gaussian rationals; used for
/// hypersurfaces in projective space and polynomial diffeomorphisms.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    pub vars: usize,
    pub terms: BTreeMap<Vec<u32>, CC>,
}

impl MultiPoly {
    pub fn new(vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, CC)>) -> Self {
        let mut map: BTreeMap<Vec<u32>, CC> = BTreeMap::new();
        for (expo, c) in terms {
            assert_eq!(expo.len(), vars, "exponent arity mismatch");
            let entry = map.entry(expo).or_insert_with(CC::zero);
            *entry = entry.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { vars, terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Substitute univariate polynomials for the variables.
    pub fn compose_univariate(&self, args: &[CPoly]) -> CPoly {
        assert_eq!(args.len(), self.vars);
        let mut acc = CPoly::zero();
        for (expo, c) in &self.terms {
            let mut term = CPoly::new(vec![c.clone()]);
            for (v, &e) in expo.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&args[v]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval(&self, point: &[CC]) -> CC {
        assert_eq!(point.len(), self.vars);
        let mut acc = CC::zero();
        for (expo, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in expo.iter().enumerate() {
                for _ in 0..e {
                    term *= point[v].clone();
                }
            }
            acc += term;
        }
        acc
    }

    /// Partial derivative in variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (expo, c) in &self.terms {
            if expo[v] == 0 {
                continue;
            }
            let mut e = expo.clone();
            e[v] -= 1;
            let coeff = c.clone() * cc(expo[v] as i64, 0);
            let entry = terms.entry(e).or_insert_with(CC::zero);
            *entry = entry.clone() + coeff;
        }
        let mut out = Self {
            vars: self.vars,
            terms,
        };
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}
