//! Factorization over ℚ: squarefree decomposition, then per part a
//! mod-p factorization, Hensel lifting and subset recombination.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hensel::lift_factors;
use super::modp::{is_prime, FpPoly};
use super::{PolyError, QPoly, ZPoly};

/// `content · ∏ factorᵢ^multᵢ`, factors primitive with positive leading
/// coefficient, irreducible over ℚ and ordered by (degree, coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub content: BigRational,
    pub factors: Vec<(ZPoly, usize)>,
}

impl FactoredPoly {
    pub fn reconstruct(&self) -> QPoly {
        let mut acc = QPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.to_qpoly().pow(*m as u32);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub(crate) fn cmp_zpoly(a: &ZPoly, b: &ZPoly) -> Ordering {
    a.coeffs()
        .len()
        .cmp(&b.coeffs().len())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Yun's algorithm. Parts are returned in primitive integer form; their
/// product reproduces `f` up to a rational constant.
pub fn squarefree_decomposition(f: &QPoly) -> Result<Vec<(QPoly, usize)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let fp = f.derivative();
    let b = QPoly::gcd(f, &fp);
    let mut c = f.div_rem(&b)?.0;
    let mut d = &fp.div_rem(&b)?.0 - &c.derivative();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = QPoly::gcd(&c, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive().1.to_qpoly(), i));
        }
        c = c.div_rem(&a)?.0;
        d = &d.div_rem(&a)?.0 - &c.derivative();
        i += 1;
    }
    Ok(out)
}

/// Number of good primes examined before committing to the one with the
/// fewest modular factors.
const PRIME_CANDIDATES: usize = 5;

fn choose_prime(f: &ZPoly) -> (u64, Vec<FpPoly>) {
    let lc = f.leading_coeff();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut seen = 0;
    let mut p = 3u64;
    while seen < PRIME_CANDIDATES {
        if is_prime(p) && !(&lc % p).is_zero() {
            let fp = FpPoly::from_zpoly(f, p);
            if fp.is_squarefree() {
                seen += 1;
                let facs = fp.monic().factor_squarefree(&mut rng);
                let better = best.as_ref().map_or(true, |(_, b)| facs.len() < b.len());
                if better {
                    let done = facs.len() == 1;
                    best = Some((p, facs));
                    if done {
                        break;
                    }
                }
            }
        }
        p += 2;
    }
    best.expect("some prime is good for a squarefree polynomial")
}

fn symmetric(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ZPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new((a * b).coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient.
fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return vec![f.clone()];
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Any factor g of f, rescaled to leading coefficient lc(f), has
    // coefficients bounded by |lc(f)|·2^n·‖f‖₂.
    let bound = f.leading_coeff().abs() * BigInt::from(2).pow(n as u32) * f.norm2_ceil();
    let mut l = 1u32;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m <= &bound * 2 {
        m *= &pb;
        l += 1;
    }
    let mut lifted = lift_factors(f, &modular, p, l);

    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lc = rest.leading_coeff();
            let cand = idx
                .iter()
                .fold(ZPoly::new(vec![lc.clone()]), |acc, &i| mul_mod(&acc, &lifted[i], &m));
            let cand = symmetric(&cand, &m).primitive_part();
            if let Some(q) = rest.divide_exact(&cand) {
                out.push(cand);
                rest = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            // next combination in lexicographic order
            let mut k = size;
            loop {
                if k == 0 {
                    size += 1;
                    continue 'outer;
                }
                k -= 1;
                if idx[k] < r - size + k {
                    idx[k] += 1;
                    for j in k + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.primitive_part());
    }
    out
}

/// Complete factorization into irreducibles over ℚ.
pub fn factor(f: &QPoly) -> Result<FactoredPoly, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut factors: Vec<(ZPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        let (_, z) = part.primitive();
        for g in factor_squarefree_z(&z) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| cmp_zpoly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let lc_prod = factors.iter().fold(BigRational::one(), |acc, (g, m)| {
        acc * BigRational::from_integer(g.leading_coeff().pow(*m as u32))
    });
    let out = FactoredPoly {
        content: f.leading_coeff() / lc_prod,
        factors,
    };
    if out.reconstruct() != *f {
        return Err(PolyError::Internal(format!("factorization of {f} does not reconstruct")));
    }
    Ok(out)
}

/// All rational roots with multiplicities, ascending. Each root comes from a
/// linear irreducible factor and is confirmed by exact evaluation.
pub fn rational_roots(f: &QPoly) -> Result<Vec<(BigRational, usize)>, PolyError> {
    let fac = factor(f)?;
    let mut out = Vec::new();
    for (g, _) in fac.factors.iter().filter(|(g, _)| g.degree() == Some(1)) {
        let root = BigRational::new(-g.coeff(0), g.coeff(1));
        if !f.evaluate(&root).is_zero() {
            return Err(PolyError::Internal(format!("{root} is not a root of {f}")));
        }
        let lin = g.to_qpoly();
        let mut rest = f.clone();
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_rem(&lin)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        out.push((root, mult));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}
