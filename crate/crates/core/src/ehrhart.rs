//! Ehrhart polynomials by counting lattice points in the dilates
//! `t = 0, …, d` and interpolating exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::polyalg::{rat, QPoly, ZPoly};
use crate::polytope::{LatticePolytope, PolytopeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub poly: QPoly,
    pub source: String,
    /// `L_P(0), …, L_P(d)`.
    pub counts: Vec<u64>,
}

impl EhrhartPolynomial {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// `(content, primitive integer form)` with `poly = content · form`.
    pub fn primitive_form(&self) -> (BigRational, ZPoly) {
        self.poly.primitive()
    }
}

/// `binom(t, k)` as a polynomial in `t`.
fn binomial_poly(k: usize) -> QPoly {
    let mut p = QPoly::one();
    let mut fact = BigInt::one();
    for i in 0..k {
        p = &p * &QPoly::new(vec![rat(-(i as i64)), rat(1)]);
        fact *= BigInt::from(i + 1);
    }
    p.scale(&BigRational::new(BigInt::one(), fact))
}

/// The polynomial of degree ≤ `values.len() − 1` through `(t, values[t])`,
/// via forward differences in the binomial basis.
pub fn interpolate_from_zero(values: &[BigInt]) -> QPoly {
    let mut diffs: Vec<BigInt> = values.to_vec();
    let mut out = QPoly::zero();
    for k in 0..values.len() {
        if !diffs[0].is_zero() {
            let c = BigRational::from_integer(diffs[0].clone());
            out = &out + &binomial_poly(k).scale(&c);
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<EhrhartPolynomial, PolytopeError> {
    let d = p.dim();
    let counts: Vec<u64> = (0..=d as u64)
        .into_par_iter()
        .map(|t| p.lattice_point_count(t))
        .collect();
    let values: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
    let poly = interpolate_from_zero(&values);
    if poly.degree() != Some(d) {
        return Err(PolytopeError::NotFullDimensional);
    }
    Ok(EhrhartPolynomial {
        poly,
        source: String::new(),
        counts,
    })
}

/// `binom(t+d+1, d+1) − binom(t, d+1)`.
pub fn fano_simplex_closed_form(d: usize) -> QPoly {
    let shifted = binomial_poly(d + 1).compose(&QPoly::new(vec![rat(d as i64 + 1), rat(1)]));
    &shifted - &binomial_poly(d + 1)
}

pub fn interior_point_count(p: &LatticePolytope, t: u64) -> u64 {
    p.interior_point_count(t)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EhrhartReport {
    pub checks: Vec<Check>,
}

impl EhrhartReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn eval_u64(p: &QPoly, t: i64) -> BigRational {
    p.evaluate(&rat(t))
}

/// Structural checks of `e` against `p`; failures are reported, not raised.
pub fn verify_ehrhart(e: &EhrhartPolynomial, p: &LatticePolytope) -> EhrhartReport {
    let d = p.dim();
    let poly = &e.poly;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check { name: name.into(), passed, detail })
    };

    let c0 = poly.coeff(0);
    push("constant-term", c0.is_one(), format!("L(0) = {c0}"));

    let fact = BigRational::from_integer((1..=d).fold(BigInt::one(), |a, i| a * BigInt::from(i)));
    let integral = poly.coeffs().iter().all(|c| (c * &fact).is_integer());
    push("factorial-integrality", integral, format!("{d}!·L has integer coefficients: {integral}"));

    push(
        "degree",
        poly.degree() == Some(d),
        format!("degree {}, dimension {d}", poly.degree().map_or("-inf".into(), |k| k.to_string())),
    );

    let recorded = e
        .counts
        .iter()
        .enumerate()
        .all(|(t, &c)| eval_u64(poly, t as i64) == rat(c as i64));
    push("recorded-counts", recorded, format!("{} recorded values", e.counts.len()));

    for t in [d + 1, d + 2] {
        let fresh = p.lattice_point_count(t as u64);
        let val = eval_u64(poly, t as i64);
        push(
            &format!("extra-node-{t}"),
            val == rat(fresh as i64),
            format!("L({t}) = {val}, count = {fresh}"),
        );
    }

    if let Ok(true) = p.is_reflexive() {
        let mirrored = poly.compose(&QPoly::new(vec![rat(-1), rat(-1)]));
        let signed = if d % 2 == 0 { poly.clone() } else { -poly };
        let diff = &mirrored - &signed;
        push(
            "palindromy",
            diff.is_zero(),
            format!("L(−1−t) − (−1)^{d}·L(t) = {diff}"),
        );
        for t in 1..=3u64 {
            let inner = p.interior_point_count(t);
            let val = eval_u64(poly, t as i64 - 1);
            push(
                &format!("reciprocity-{t}"),
                val == rat(inner as i64),
                format!("interior({t}) = {inner}, L({}) = {val}", t - 1),
            );
        }
    }
    EhrhartReport { checks }
}
