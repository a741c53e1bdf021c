//! Dense polynomials over the prime field `F_p` for small odd primes.
//!
//! Used by the Zassenhaus factorizer (mod-p factoring before Hensel lifting)
//! and by the cycle-type sampling oracle.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::ZPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = num_bigint::BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_u64().expect("fits")
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_zpoly(f: &ZPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("fits"))
                .collect(),
        )
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => self.scale(inv_mod(lc, self.p)),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| a * c % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + o.coeffs.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + self.p
                    - o.coeffs.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    /// Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let inv = inv_mod(*d.coeffs.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd] * inv % p;
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - c * dc % p) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::new(p, vec![]));
        let (mut t0, mut t1) = (Self::new(p, vec![]), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = *r0.coeffs.last().unwrap_or(&1);
        let inv = inv_mod(lc, p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * (i as u64 % p) % p)
                .collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && Self::gcd(self, &d).degree() == Some(0)
            }
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(p);
        let mut h = x.clone();
        let pb = BigUint::from(p);
        let mut d = 0;
        while let Some(deg) = f.degree() {
            if deg < 2 * (d + 1) {
                if deg > 0 {
                    out.push((deg, f.clone()));
                }
                break;
            }
            d += 1;
            h = h.pow_mod(&pb, &f);
            let g = Self::gcd(&h.sub(&x), &f);
            if g.degree().unwrap_or(0) > 0 {
                out.push((d, g.clone()));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of equal degree `d`
    /// (Cantor–Zassenhaus, odd `p`).
    pub fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<FpPoly> {
        let n = self.degree().unwrap_or(0);
        if n <= d {
            return vec![self.monic()];
        }
        let p = self.p;
        let e: BigUint = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = Self::gcd(&a, self);
            if g.degree().unwrap_or(0) > 0 {
                let h = self.div_rem(&g).0;
                let mut v = g.equal_degree(d, rng);
                v.extend(h.monic().equal_degree(d, rng));
                return v;
            }
            let b = a.pow_mod(&e, self).sub(&Self::one(p));
            let g = Self::gcd(&b, self);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.div_rem(&g).0;
                let mut v = g.equal_degree(d, rng);
                v.extend(h.monic().equal_degree(d, rng));
                return v;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted by
    /// (degree, coefficients).
    pub fn factor_squarefree<R: Rng>(&self, rng: &mut R) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree() {
            out.extend(g.equal_degree(d, rng));
        }
        out.sort_by(|a, b| {
            a.coeffs
                .len()
                .cmp(&b.coeffs.len())
                .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
        });
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, sorted
    /// descending (the cycle type of Frobenius).
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (d, g) in self.distinct_degree() {
            let k = g.degree().unwrap_or(0) / d;
            v.extend(std::iter::repeat(d).take(k));
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Lifts coefficients to symmetric representatives in ℤ.
    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_over_f7() {
        // (x-1)(x-2)(x^2+1) over F_7; x^2+1 is irreducible since 7 ≡ 3 mod 4
        let a = FpPoly::from_zpoly(&ZPoly::from_ints(&[-1, 1]), 7)
            .mul(&FpPoly::from_zpoly(&ZPoly::from_ints(&[-2, 1]), 7))
            .mul(&FpPoly::from_zpoly(&ZPoly::from_ints(&[1, 0, 1]), 7));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = a.factor_squarefree(&mut rng);
        assert_eq!(fs.len(), 3);
        assert_eq!(a.factor_degrees(), vec![2, 1, 1]);
        let prod = fs.iter().fold(FpPoly::one(7), |acc, g| acc.mul(g));
        assert_eq!(prod, a.monic());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = FpPoly::from_zpoly(&ZPoly::from_ints(&[3, 1, 4, 1]), 11);
        let b = FpPoly::from_zpoly(&ZPoly::from_ints(&[5, 9, 2]), 11);
        let (g, s, t) = FpPoly::ext_gcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
