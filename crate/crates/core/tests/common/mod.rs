//! Kronecker's factoring method for small integer polynomials, used as an
//! independent oracle for `factor`.
#![allow(dead_code)]

use ehrlab_core::polyalg::{factor, QPoly, ZPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type P = Vec<i128>;

fn trim(mut p: P) -> P {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn eval(p: &[i128], x: i128) -> i128 {
    p.iter().rev().fold(0, |acc, &c| acc * x + c)
}

pub fn mul(a: &[i128], b: &[i128]) -> P {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient `a / b` over ℤ, if it exists.
pub fn div_exact(a: &[i128], b: &[i128]) -> Option<P> {
    let (mut r, db) = (a.to_vec(), b.len() - 1);
    if r.len() < b.len() {
        return None;
    }
    let lb = b[db];
    let mut q = vec![0; r.len() - db];
    for k in (0..q.len()).rev() {
        if r[k + db] % lb != 0 {
            return None;
        }
        let c = r[k + db] / lb;
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    r.iter().all(|&x| x == 0).then_some(q)
}

fn divisors(v: i128) -> Vec<i128> {
    let v = v.abs();
    let mut out = Vec::new();
    for d in 1..=v {
        if v % d == 0 {
            out.push(d);
            out.push(-d);
        }
    }
    out
}

pub fn content(p: &[i128]) -> i128 {
    p.iter().fold(0i128, |g, &c| num_integer::Integer::gcd(&g, &c))
}

pub fn normalize(p: P) -> P {
    let c = content(&p) * p.last().unwrap().signum();
    p.into_iter().map(|x| x / c).collect()
}

/// Lagrange interpolation through `(xs[i], ys[i])`, if integral.
fn interpolate(xs: &[i128], ys: &[i128]) -> Option<P> {
    let n = xs.len();
    let mut num = vec![0i128; n];
    let mut den = 1i128;
    let mut parts = Vec::new();
    for i in 0..n {
        let mut basis = vec![1i128];
        let mut d = 1i128;
        for j in 0..n {
            if j != i {
                basis = mul(&basis, &[-xs[j], 1]);
                d *= xs[i] - xs[j];
            }
        }
        parts.push((basis, ys[i], d));
        den = num_integer::Integer::lcm(&den, &d);
    }
    for (basis, y, d) in parts {
        for (k, b) in basis.iter().enumerate() {
            num[k] += b * y * (den / d);
        }
    }
    num.iter().all(|c| c % den == 0).then(|| trim(num.iter().map(|c| c / den).collect()))
}

/// A nonconstant proper factor of `f` of degree at most `deg f / 2`.
fn kronecker_split(f: &[i128]) -> Option<P> {
    let n = f.len() - 1;
    if n <= 1 {
        return None;
    }
    let xs: Vec<i128> = [0, 1, -1, 2, -2].into_iter().take(n / 2 + 1).collect();
    for &x in &xs {
        if eval(f, x) == 0 {
            return Some(vec![-x, 1]);
        }
    }
    let divs: Vec<Vec<i128>> = xs.iter().map(|&x| divisors(eval(f, x))).collect();
    let mut idx = vec![0usize; xs.len()];
    loop {
        // first value positive: factors are determined up to sign
        if divs[0][idx[0]] > 0 {
            let ys: Vec<i128> = idx.iter().zip(&divs).map(|(&i, d)| d[i]).collect();
            if let Some(g) = interpolate(&xs, &ys) {
                if g.len() >= 2 && div_exact(f, &g).is_some() {
                    return Some(g);
                }
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < divs[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Irreducible factors of a primitive `f`, normalized, sorted.
pub fn kronecker_factor(f: &[i128]) -> Vec<P> {
    let f = normalize(f.to_vec());
    if f.len() <= 1 {
        return vec![];
    }
    match kronecker_split(&f) {
        None => vec![f],
        Some(g) => {
            let h = div_exact(&f, &g).unwrap();
            let mut out = kronecker_factor(&g);
            out.extend(kronecker_factor(&h));
            out.sort();
            out
        }
    }
}

pub fn to_q(p: &[i128]) -> QPoly {
    QPoly::new(p.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

fn from_z(z: &ZPoly) -> P {
    z.coeffs().iter().map(|c| c.to_string().parse().unwrap()).collect()
}

pub fn factored(f: &QPoly) -> Vec<P> {
    let fac = factor(f).unwrap();
    let mut out = Vec::new();
    for (z, m) in &fac.factors {
        for _ in 0..*m {
            out.push(normalize(from_z(z)));
        }
    }
    out.sort();
    out
}

pub fn random_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i128) -> P {
    loop {
        let p: P = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
        if p[deg] != 0 && content(&p) != 0 {
            return normalize(p);
        }
    }
}

pub fn random_irreducible(rng: &mut ChaCha8Rng) -> P {
    loop {
        let deg = rng.gen_range(1..=4);
        let p = random_poly(rng, deg, 20);
        if kronecker_factor(&p).len() == 1 {
            return p;
        }
    }
}
