//! Input parsing helpers shared by the subcommands.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use std::fs;
use std::io::Read;

use strata_core::donaldson::Rational;
use strata_core::intersect::{CPoly, CC};

pub type AnyError = Box<dyn std::error::Error>;

/// Read inline JSON, a file path, or stdin (`-`).
pub fn read_payload(arg: &str) -> Result<String, AnyError> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    Ok(fs::read_to_string(arg)?)
}

/// A rational from `"3"`, `"3/4"`, or a finite decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, AnyError> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse()?;
        let d: BigInt = den.trim().parse()?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = frac_part.len() as u32;
        let scale = BigInt::from(10u32).pow(digits);
        let joined: BigInt = format!("{}{}", int_part, frac_part).parse()?;
        return Ok(Rational::new(joined, scale));
    }
    let n: BigInt = s.parse()?;
    Ok(Rational::new(n, BigInt::one()))
}

/// Row-major JSON matrix, e.g. `[[1,0],[0,1]]`.
pub fn parse_matrix(s: &str) -> Result<DMatrix<f64>, AnyError> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(&read_payload(s)?)?;
    if rows.is_empty() {
        return Err("empty matrix".into());
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err("ragged matrix rows".into());
    }
    Ok(DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

/// Complex vector from `[[re,im],...]`.
pub fn parse_complex_vec(s: &str) -> Result<Vec<Complex64>, AnyError> {
    let raw: Vec<[f64; 2]> = serde_json::from_str(&read_payload(s)?)?;
    Ok(raw.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
}

/// Exact polynomial from ascending `[[re,im],...]` coefficients; decimal
/// inputs convert exactly through their binary representation.
pub fn parse_cpoly(s: &str) -> Result<CPoly, AnyError> {
    let raw: Vec<[f64; 2]> = serde_json::from_str(&read_payload(s)?)?;
    let mut coeffs = Vec::with_capacity(raw.len());
    for [re, im] in &raw {
        let re = num_rational::BigRational::from_float(*re).ok_or("non-finite coefficient")?;
        let im = num_rational::BigRational::from_float(*im).ok_or("non-finite coefficient")?;
        coeffs.push(CC::new(re, im));
    }
    Ok(CPoly::new(coeffs))
}

/// Comma-separated integers: `1,0,-2`.
pub fn parse_int_row(s: &str) -> Result<Vec<i64>, AnyError> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(Into::into))
        .collect()
}

pub fn print_json<T: serde::Serialize>(value: &T) -> Result<(), AnyError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}
