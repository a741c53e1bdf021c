//! Relative invariants. `F^σ(x) = F(x_{σ(1)}, …, x_{σ(n)})`, which is a right
//! action matching the left-to-right product of [`Perm`].

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::GaloisError;
use crate::permgrp::{Perm, PermGroup};
use crate::roots::ComplexBall;

/// Largest total degree tried by the monomial search.
pub const MAX_INVARIANT_DEGREE: usize = 8;

/// Largest subgroup order for the distinct-exponent fallback.
const FALLBACK_TERM_CAP: u64 = 50_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InvariantKind {
    /// Sum of the given monomials (exponent vectors), one orbit of a group.
    OrbitSum { monomials: Vec<Vec<u8>> },
    /// `∏_{i<j} (x_i − x_j)`.
    Vandermonde,
    /// `(Σ c_i x_i)²`.
    SquaredLinear { coeffs: Vec<i8> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantPoly {
    pub n: usize,
    pub kind: InvariantKind,
    pub description: String,
}

/// Exponent vector of `m^σ`: `m'_{σ(i)} = m_i`.
fn act(m: &[u8], s: &Perm) -> Vec<u8> {
    let mut out = vec![0u8; m.len()];
    for (i, &e) in m.iter().enumerate() {
        out[s.image(i)] = e;
    }
    out
}

fn monomial_string(m: &[u8]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{e}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl InvariantPoly {
    pub fn vandermonde(n: usize) -> Self {
        InvariantPoly {
            n,
            kind: InvariantKind::Vandermonde,
            description: format!("prod_{{i<j}} (x_i - x_j) on {n} points"),
        }
    }

    /// The sum over the `h`-orbit of the monomial with exponents `exps`.
    pub fn orbit_sum(h: &PermGroup, exps: &[u8]) -> Self {
        let orbit = monomial_orbit(h, exps, usize::MAX).expect("unbounded");
        let description = format!(
            "orbit sum of {} ({} terms)",
            monomial_string(exps),
            orbit.len()
        );
        InvariantPoly {
            n: exps.len(),
            kind: InvariantKind::OrbitSum { monomials: orbit.into_iter().collect() },
            description,
        }
    }

    pub fn squared_linear(coeffs: Vec<i8>) -> Self {
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match c {
                1 => format!("+x{}", i + 1),
                -1 => format!("-x{}", i + 1),
                _ => format!("{c:+}*x{}", i + 1),
            })
            .collect();
        InvariantPoly {
            n: coeffs.len(),
            description: format!("({})^2", terms.concat().trim_start_matches('+')),
            kind: InvariantKind::SquaredLinear { coeffs },
        }
    }

    pub fn degree(&self) -> usize {
        match &self.kind {
            InvariantKind::OrbitSum { monomials } => {
                monomials[0].iter().map(|&e| e as usize).sum()
            }
            InvariantKind::Vandermonde => self.n * (self.n - 1) / 2,
            InvariantKind::SquaredLinear { .. } => 2,
        }
    }

    /// Whether `F^s = F` as polynomials.
    pub fn is_fixed_by(&self, s: &Perm) -> bool {
        match &self.kind {
            InvariantKind::OrbitSum { monomials } => monomials
                .iter()
                .all(|m| monomials.binary_search(&act(m, s)).is_ok()),
            InvariantKind::Vandermonde => s.is_even(),
            InvariantKind::SquaredLinear { coeffs } => {
                let moved: Vec<i8> = {
                    let mut out = vec![0i8; coeffs.len()];
                    for (i, &c) in coeffs.iter().enumerate() {
                        out[s.image(i)] = c;
                    }
                    out
                };
                moved == *coeffs || moved.iter().zip(coeffs).all(|(a, b)| *a == -*b)
            }
        }
    }

    /// Checks that every generator of `h` fixes `F` and some generator of
    /// `g` does not; for `h` maximal in `g` this pins the stabilizer to `h`.
    pub fn has_stabilizer(&self, g: &PermGroup, h: &PermGroup) -> bool {
        h.generators().iter().all(|s| self.is_fixed_by(s))
            && g.generators().iter().any(|s| !self.is_fixed_by(s))
    }

    /// Ball enclosure of `F(roots)`.
    pub fn evaluate(&self, roots: &[ComplexBall], prec: u32) -> ComplexBall {
        match &self.kind {
            InvariantKind::OrbitSum { monomials } => {
                let top = monomials.iter().flatten().copied().max().unwrap_or(0) as usize;
                let powers: Vec<Vec<ComplexBall>> = roots
                    .iter()
                    .map(|r| {
                        let mut v = vec![ComplexBall::from_i64(1)];
                        for e in 1..=top {
                            v.push(v[e - 1].mul(r, prec));
                        }
                        v
                    })
                    .collect();
                let mut acc = ComplexBall::zero();
                for m in monomials {
                    let mut t = ComplexBall::from_i64(1);
                    for (i, &e) in m.iter().enumerate() {
                        if e > 0 {
                            t = t.mul(&powers[i][e as usize], prec);
                        }
                    }
                    acc = acc.add(&t, prec);
                }
                acc
            }
            InvariantKind::Vandermonde => {
                let mut acc = ComplexBall::from_i64(1);
                for i in 0..roots.len() {
                    for j in i + 1..roots.len() {
                        acc = acc.mul(&roots[i].sub(&roots[j], prec), prec);
                    }
                }
                acc
            }
            InvariantKind::SquaredLinear { coeffs } => {
                let mut l = ComplexBall::zero();
                for (r, &c) in roots.iter().zip(coeffs) {
                    l = match c {
                        0 => l,
                        1 => l.add(r, prec),
                        -1 => l.sub(r, prec),
                        _ => l.add(&r.mul(&ComplexBall::from_i64(c as i64), prec), prec),
                    };
                }
                l.mul(&l, prec)
            }
        }
    }
}

/// The `h`-orbit of a monomial, or `None` once it exceeds `cap` elements.
fn monomial_orbit(h: &PermGroup, m: &[u8], cap: usize) -> Option<BTreeSet<Vec<u8>>> {
    let mut seen = BTreeSet::from([m.to_vec()]);
    let mut stack = vec![m.to_vec()];
    while let Some(x) = stack.pop() {
        for s in h.generators() {
            let y = act(&x, s);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(y.clone());
                stack.push(y);
            }
        }
    }
    Some(seen)
}

/// Exponent vectors of total degree `d` in `n` variables, lexicographically
/// descending.
fn compositions(n: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n - 1 {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// A `g`-relative `h`-invariant for `h` maximal in `g`.
///
/// Index-2 inclusions with `h = g ∩ A_n` use the Vandermonde product.
/// Otherwise monomial orbit sums are searched by increasing total degree; at
/// the first degree that yields any invariant, the one with the fewest terms
/// is returned. If none exists up to degree 8, the `h`-orbit sum of a
/// monomial with pairwise distinct exponents is used.
pub fn relative_invariant(g: &PermGroup, h: &PermGroup) -> Result<InvariantPoly, GaloisError> {
    if !h.is_subgroup_of(g) || h.order() == g.order() {
        return Err(GaloisError::NotProperSubgroup);
    }
    let n = g.degree();
    if g.has_odd_permutation() && !h.has_odd_permutation() && 2 * h.order() == g.order() {
        return Ok(InvariantPoly::vandermonde(n));
    }
    for d in 1..=MAX_INVARIANT_DEGREE {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut best: Option<(usize, Vec<u8>)> = None;
        for m in compositions(n, d) {
            if seen.contains(&m) {
                continue;
            }
            let cap = best.as_ref().map_or(usize::MAX, |b| b.0);
            let Some(orbit) = monomial_orbit(h, &m, cap) else {
                continue;
            };
            let moved = g
                .generators()
                .iter()
                .any(|s| orbit.iter().any(|x| !orbit.contains(&act(x, s))));
            let len = orbit.len();
            seen.extend(orbit);
            if moved && best.as_ref().map_or(true, |b| len < b.0) {
                best = Some((len, m));
            }
        }
        if let Some((_, m)) = best {
            return Ok(InvariantPoly::orbit_sum(h, &m));
        }
    }
    // x2·x3^2⋯xn^(n−1) has trivial stabilizer in S_n, so its h-orbit sum is
    // fixed exactly by h
    let m0: Vec<u8> = (0..n as u8).collect();
    if h.order() > FALLBACK_TERM_CAP {
        return Err(GaloisError::SearchBudgetExhausted(format!(
            "no orbit-sum invariant of degree <= {MAX_INVARIANT_DEGREE} for a subgroup of order {} in a group of order {}",
            h.order(),
            g.order()
        )));
    }
    Ok(InvariantPoly::orbit_sum(h, &m0))
}
