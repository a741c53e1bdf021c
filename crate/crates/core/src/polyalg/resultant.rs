use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PolyError, QPoly};

/// `res(f, g) = lc(f)^deg(g) · ∏_{f(α)=0} g(α)`, computed by the Euclidean
/// remainder sequence over ℚ. Zero if either input is zero.
pub fn resultant(f: &QPoly, g: &QPoly) -> BigRational {
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut acc = BigRational::one();
    loop {
        let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
            return BigRational::zero();
        };
        if n == 0 {
            return acc * pow(&b.leading_coeff(), m);
        }
        if m == 0 {
            return acc * pow(&a.leading_coeff(), n);
        }
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        if m < n {
            // res(a, b) = (-1)^{mn} res(b, a); continue with the swapped pair
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = a.div_rem(&b).expect("nonzero divisor").1;
        let Some(k) = r.degree() else {
            return BigRational::zero();
        };
        acc *= pow(&b.leading_coeff(), m - k);
        a = b;
        b = r;
    }
}

fn pow(c: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= c;
    }
    acc
}

/// `disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f)`.
pub fn discriminant(f: &QPoly) -> Result<BigRational, PolyError> {
    let n = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Err(PolyError::Constant);
    }
    let r = resultant(f, &f.derivative()) / f.leading_coeff();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// True iff `q` is the square of a rational number.
pub fn is_square_rational(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    is_square_int(q.numer()) && is_square_int(q.denom())
}

fn is_square_int(n: &BigInt) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}
