//! Linear Hensel lifting of a mod-p factorization to p^l, organized as a
//! balanced factor tree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::modp::FpPoly;
use super::ZPoly;

fn reduce(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `f ≡ g0·h0 (mod p)` to `f ≡ g·h (mod p^l)` with `h` monic and
/// `lc(g) = lc(f)`. Requires `gcd(g0, h0) = 1` in `F_p[x]`.
fn lift_pair(f: &ZPoly, g0: &FpPoly, h0: &FpPoly, p: u64, l: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = FpPoly::ext_gcd(g0, h0);
    let pb = BigInt::from(p);
    let mut g = g0.to_zpoly();
    let mut gc = g.coeffs().to_vec();
    *gc.last_mut().expect("nonzero") = f.leading_coeff();
    g = ZPoly::new(gc);
    let mut h = h0.to_zpoly();
    let mut pk = pb.clone();
    for _ in 1..l {
        let diff = f - &(&g * &h);
        if diff.is_zero() {
            break;
        }
        let e = ZPoly::new(diff.coeffs().iter().map(|c| c / &pk).collect());
        let ep = FpPoly::from_zpoly(&e, p);
        let (q, sigma) = s.mul(&ep).div_rem(h0);
        let tau = t.mul(&ep).add(&q.mul(g0));
        g = &g + &tau.to_zpoly().scale(&pk);
        h = &h + &sigma.to_zpoly().scale(&pk);
        pk *= &pb;
    }
    (g, h)
}

/// Lifts monic pairwise-coprime mod-p factors of `f` (whose product is
/// `f / lc(f)` mod p) to monic factors mod `p^l`.
pub(crate) fn lift_factors(f: &ZPoly, factors: &[FpPoly], p: u64, l: u32) -> Vec<ZPoly> {
    let m = BigInt::from(p).pow(l);
    lift_rec(f, factors, p, l, &m)
}

fn lift_rec(f: &ZPoly, factors: &[FpPoly], p: u64, l: u32, m: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let inv = inv_mod_big(&f.leading_coeff(), m);
        return vec![reduce(&f.scale(&inv), m)];
    }
    let mid = factors.len() / 2;
    let (a, b) = factors.split_at(mid);
    let lc_p = FpPoly::from_zpoly(&ZPoly::new(vec![f.leading_coeff()]), p);
    let g0 = a.iter().fold(lc_p, |acc, x| acc.mul(x));
    let h0 = b
        .iter()
        .fold(FpPoly::new(p, vec![1]), |acc, x| acc.mul(x));
    let (g, h) = lift_pair(f, &g0, &h0, p, l);
    let (g, h) = (reduce(&g, m), reduce(&h, m));
    let mut out = lift_rec(&g, a, p, l, m);
    out.extend(lift_rec(&h, b, p, l, m));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use num_traits::Zero;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lifted_product_matches_mod_power() {
        // (3x^2 + 2x - 7)(x^3 - 5x + 1)(2x + 9)
        let f = &(&ZPoly::from_ints(&[-7, 2, 3]) * &ZPoly::from_ints(&[1, -5, 0, 1]))
            * &ZPoly::from_ints(&[9, 2]);
        let p = [11u64, 13, 17, 19, 23, 29]
            .into_iter()
            .find(|&p| FpPoly::from_zpoly(&f, p).is_squarefree() && (f.leading_coeff() % p) != BigInt::zero())
            .unwrap();
        let fp = FpPoly::from_zpoly(&f, p);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let facs = fp.monic().factor_squarefree(&mut rng);
        let l = 6;
        let lifted = lift_factors(&f, &facs, p, l);
        let m = BigInt::from(p).pow(l);
        let prod = lifted
            .iter()
            .fold(ZPoly::new(vec![f.leading_coeff()]), |acc, g| &acc * g);
        assert_eq!(reduce(&prod, &m), reduce(&f, &m));
        for g in &lifted {
            assert!(g.leading_coeff().is_one());
        }
    }
}
