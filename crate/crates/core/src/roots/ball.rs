//! Exact dyadic numbers, upward-rounded magnitudes and complex balls.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `m · 2^e`, exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    pub fn new(m: BigInt, e: i64) -> Self {
        let mut d = Dyadic { m, e };
        d.normalize();
        d
    }

    pub fn from_int(n: &BigInt) -> Self {
        Self::new(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    /// Nearest dyadic to a finite `f64` (exact).
    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero();
        }
        let (mant, exp, sign) = num_traits::float::FloatCore::integer_decode(x);
        let m = BigInt::from(mant) * i64::from(sign);
        Self::new(m, i64::from(exp))
    }

    fn normalize(&mut self) {
        if self.m.is_zero() {
            self.e = 0;
            return;
        }
        let tz = self.m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.m >>= tz as usize;
            self.e += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic { m: self.m.abs(), e: self.e }
    }

    /// Bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.m.bits()
    }

    /// Exponent of the leading bit: `2^(top-1) ≤ |x| < 2^top`.
    pub fn top(&self) -> i64 {
        self.e + self.m.bits() as i64
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &o.m << (o.e - e) as usize;
        Self::new(a + b, e)
    }

    pub fn neg(&self) -> Self {
        Dyadic { m: -&self.m, e: self.e }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.m * &o.m, self.e + o.e)
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Self::new(&self.m * n, self.e)
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { m: self.m.clone(), e: self.e + k }
    }

    /// Rounds to at most `prec` mantissa bits (toward −∞); returns the
    /// rounded value and an upper bound on the error.
    pub fn round(&self, prec: u32) -> (Self, Mag) {
        let bits = self.m.bits();
        if bits <= u64::from(prec) {
            return (self.clone(), Mag::zero());
        }
        let shift = bits - u64::from(prec);
        let m = &self.m >> shift as usize;
        let err = Mag::pow2(self.e + shift as i64);
        (Self::new(m, self.e + shift as i64), err)
    }

    /// Approximate quotient with about `prec` bits; `None` if `o` is zero.
    pub fn div_approx(&self, o: &Self, prec: u32) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let s = (i64::from(prec) + o.m.bits() as i64 - self.m.bits() as i64 + 2).max(0);
        let q = (&self.m << s as usize) / &o.m;
        Some(Self::new(q, self.e - o.e - s))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.m >> shift as usize).to_f64().unwrap_or(0.0);
        let e = self.e + shift;
        m * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as usize)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    /// Nearest integer (ties up).
    pub fn round_to_int(&self) -> BigInt {
        if self.e >= 0 {
            return &self.m << self.e as usize;
        }
        let sh = (-self.e) as usize;
        let half = BigInt::one() << (sh - 1);
        (&self.m + half) >> sh
    }

    pub fn floor_log2_abs(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.top() - 1)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let d = self.sub(o);
        match d.m.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Nonnegative `m · 2^e` with a small mantissa; all operations round up.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mag {
    m: u64,
    e: i64,
}

const MAG_BITS: u32 = 30;

impl Mag {
    pub fn zero() -> Self {
        Mag { m: 0, e: 0 }
    }

    pub fn pow2(e: i64) -> Self {
        Mag { m: 1, e }
    }

    fn norm(m: u128, e: i64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let bits = 128 - m.leading_zeros();
        if bits <= MAG_BITS {
            return Mag { m: m as u64, e };
        }
        let sh = bits - MAG_BITS;
        let mut q = m >> sh;
        if q << sh != m {
            q += 1;
        }
        Self::norm(q, e + i64::from(sh))
    }

    /// Upper bound for `|x|`.
    pub fn from_dyadic(x: &Dyadic) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let bits = x.m.bits();
        let a = x.m.magnitude();
        if bits <= u64::from(MAG_BITS) {
            return Self::norm(a.to_u64().unwrap() as u128, x.e);
        }
        let sh = bits - u64::from(MAG_BITS);
        let mut q = (a >> sh as usize).to_u64().unwrap();
        if a.trailing_zeros().unwrap_or(0) < sh {
            q += 1;
        }
        Self::norm(q as u128, x.e + sh as i64)
    }

    pub fn from_u64(n: u64) -> Self {
        Self::norm(n as u128, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let gap = hi.e - lo.e;
        if gap > 60 {
            // lo is below one unit of hi's last place
            return Self::norm(hi.m as u128 + 1, hi.e);
        }
        Self::norm(((hi.m as u128) << gap) + lo.m as u128, lo.e)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::norm(self.m as u128 * o.m as u128, self.e + o.e)
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Mag { m: self.m, e: self.e + k }
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic::new(BigInt::from(self.m), self.e)
    }

    pub fn to_f64(&self) -> f64 {
        self.m as f64 * 2f64.powi(self.e.clamp(-2000, 2000) as i32)
    }

    /// `floor(log2(self))`, `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (self.m != 0).then(|| self.e + i64::from(63 - self.m.leading_zeros()))
    }

    /// Upper bound for `sqrt(num/den)` given exact nonnegative dyadics.
    pub fn sqrt_ratio_upper(num: &Dyadic, den: &Dyadic) -> Option<Self> {
        if den.is_zero() || den.is_negative() || num.is_negative() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        // num/den = (a/b)·2^(ea−eb); scale so the integer quotient has ~120 bits
        let (a, b) = (num.m.magnitude(), den.m.magnitude());
        let mut s = 120 + b.bits() as i64 - a.bits() as i64;
        let mut ex = num.e - den.e - s;
        if ex.rem_euclid(2) == 1 {
            s += 1;
            ex -= 1;
        }
        let scaled = if s >= 0 { a << s as usize } else { a >> (-s) as usize };
        let (q, r) = scaled.div_rem(b);
        let q = if r.is_zero() && s >= 0 { q } else { q + 1u32 };
        let mut root = q.sqrt();
        if &root * &root < q {
            root += 1u32;
        }
        let root = Dyadic::new(BigInt::from(root), ex / 2);
        Some(Self::from_dyadic(&root))
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.to_dyadic().cmp(&o.to_dyadic()))
    }
}

/// Disc `{z : |z − (re + i·im)| ≤ rad}`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Mag,
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:e} + {:e}i ± {:.3e}]",
            self.re.to_f64(),
            self.im.to_f64(),
            self.rad.to_f64()
        )
    }
}

impl ComplexBall {
    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        ComplexBall { re, im, rad: Mag::zero() }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Self::exact(Dyadic::from_int(n), Dyadic::zero())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    fn rounded(re: Dyadic, im: Dyadic, rad: Mag, prec: u32) -> Self {
        let (re, e1) = re.round(prec);
        let (im, e2) = im.round(prec);
        ComplexBall { re, im, rad: rad.add(&e1).add(&e2) }
    }

    /// Upper bound for `|z|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_dyadic(&self.re)
            .add(&Mag::from_dyadic(&self.im))
            .add(&self.rad)
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        Self::rounded(self.re.add(&o.re), self.im.add(&o.im), self.rad.add(&o.rad), prec)
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        Self::rounded(self.re.sub(&o.re), self.im.sub(&o.im), self.rad.add(&o.rad), prec)
    }

    pub fn neg(&self) -> Self {
        ComplexBall { re: self.re.neg(), im: self.im.neg(), rad: self.rad }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        let ca = Mag::from_dyadic(&self.re).add(&Mag::from_dyadic(&self.im));
        let cb = Mag::from_dyadic(&o.re).add(&Mag::from_dyadic(&o.im));
        let rad = ca.mul(&o.rad).add(&cb.mul(&self.rad)).add(&self.rad.mul(&o.rad));
        Self::rounded(re, im, rad, prec)
    }

    pub fn mul_int(&self, n: &BigInt, prec: u32) -> Self {
        let nm = Mag::from_dyadic(&Dyadic::from_int(n));
        Self::rounded(self.re.mul_int(n), self.im.mul_int(n), self.rad.mul(&nm), prec)
    }

    pub fn pow(&self, k: u32, prec: u32) -> Self {
        let mut acc = ComplexBall::from_i64(1);
        for _ in 0..k {
            acc = acc.mul(self, prec);
        }
        acc
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: self.im.neg(), rad: self.rad }
    }

    /// True if the two discs certainly share no point.
    pub fn disjoint(&self, o: &Self) -> bool {
        let r = self.rad.add(&o.rad).to_dyadic();
        self.re.sub(&o.re).abs() > r || self.im.sub(&o.im).abs() > r
    }

    /// True if `self` certainly lies inside `o`.
    pub fn inside(&self, o: &Self) -> bool {
        let d = self.re.sub(&o.re).abs().add(&self.im.sub(&o.im).abs());
        d.add(&self.rad.to_dyadic()) <= o.rad.to_dyadic()
    }

    pub fn contains_point(&self, re: &Dyadic, im: &Dyadic) -> bool {
        let dr = self.re.sub(re);
        let di = self.im.sub(im);
        let r = self.rad.to_dyadic();
        dr.mul(&dr).add(&di.mul(&di)) <= r.mul(&r)
    }

    /// Nearest integer to the center, and whether the ball contains it.
    pub fn nearest_integer(&self) -> (BigInt, bool) {
        let m = self.re.round_to_int();
        let inside = self.contains_point(&Dyadic::from_int(&m), &Dyadic::zero());
        (m, inside)
    }

    /// True if the ball certainly contains no integer.
    pub fn excludes_integers(&self) -> bool {
        !self.nearest_integer().1
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_point(&Dyadic::zero(), &Dyadic::zero())
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }
}
