use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ball::{ComplexBall, Dyadic, Mag};
use super::RootError;
use crate::polyalg::{QPoly, ZPoly};

pub const START_PRECISION: u32 = 64;
pub const DEFAULT_PRECISION_CEILING: u32 = 65536;

/// The precision ceiling: `EHRLAB_PRECISION_CEILING` if set, else 65536.
pub fn precision_ceiling() -> u32 {
    std::env::var("EHRLAB_PRECISION_CEILING")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_PRECISION_CEILING)
}

/// Certified enclosures of all complex roots of a squarefree polynomial.
/// The order of `balls` fixes the labelling of the roots.
#[derive(Clone, Debug)]
pub struct RootEnclosures {
    pub poly: ZPoly,
    pub balls: Vec<ComplexBall>,
    pub precision: u32,
    ceiling: u32,
}

// complex approximations used by the iteration (not rigorous)
#[derive(Clone, Debug)]
struct Cx {
    re: Dyadic,
    im: Dyadic,
}

impl Cx {
    fn new(re: Dyadic, im: Dyadic) -> Self {
        Cx { re, im }
    }
    fn r(x: Dyadic, p: u32) -> Dyadic {
        x.round(p).0
    }
    fn add(&self, o: &Cx, p: u32) -> Cx {
        Cx::new(Self::r(self.re.add(&o.re), p), Self::r(self.im.add(&o.im), p))
    }
    fn sub(&self, o: &Cx, p: u32) -> Cx {
        Cx::new(Self::r(self.re.sub(&o.re), p), Self::r(self.im.sub(&o.im), p))
    }
    fn mul(&self, o: &Cx, p: u32) -> Cx {
        Cx::new(
            Self::r(self.re.mul(&o.re).sub(&self.im.mul(&o.im)), p),
            Self::r(self.re.mul(&o.im).add(&self.im.mul(&o.re)), p),
        )
    }
    fn div(&self, o: &Cx, p: u32) -> Option<Cx> {
        let den = Self::r(o.re.mul(&o.re).add(&o.im.mul(&o.im)), p + 8);
        let nre = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let nim = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Some(Cx::new(nre.div_approx(&den, p)?, nim.div_approx(&den, p)?))
    }
    fn mag_log2(&self) -> Option<i64> {
        let a = self.re.floor_log2_abs();
        let b = self.im.floor_log2_abs();
        a.max(b)
    }
}

/// Approximate `(f(z), f'(z))` by Horner with rounding.
fn eval_approx(coeffs: &[Dyadic], z: &Cx, p: u32) -> (Cx, Cx) {
    let zero = Cx::new(Dyadic::zero(), Dyadic::zero());
    let mut f = zero.clone();
    let mut df = zero;
    for c in coeffs.iter().rev() {
        df = df.mul(z, p).add(&f, p);
        f = f.mul(z, p).add(&Cx::new(c.clone(), Dyadic::zero()), p);
    }
    (f, df)
}

/// Exact `(f(z), f'(z))` at a dyadic point.
fn eval_exact(coeffs: &[Dyadic], re: &Dyadic, im: &Dyadic) -> ((Dyadic, Dyadic), (Dyadic, Dyadic)) {
    let (mut fr, mut fi) = (Dyadic::zero(), Dyadic::zero());
    let (mut dr, mut di) = (Dyadic::zero(), Dyadic::zero());
    for c in coeffs.iter().rev() {
        let ndr = dr.mul(re).sub(&di.mul(im)).add(&fr);
        let ndi = dr.mul(im).add(&di.mul(re)).add(&fi);
        dr = ndr;
        di = ndi;
        let nfr = fr.mul(re).sub(&fi.mul(im)).add(c);
        let nfi = fr.mul(im).add(&fi.mul(re));
        fr = nfr;
        fi = nfi;
    }
    ((fr, fi), (dr, di))
}

fn initial_points(f: &ZPoly) -> Vec<Cx> {
    let n = f.degree().unwrap();
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();
    let an = c[n];
    let center = -c[n - 1] / (n as f64 * an);
    // Fujiwara-style bound on the root modulus
    let mut r: f64 = 0.0;
    for k in 1..=n {
        let q = (c[n - k] / an).abs().powf(1.0 / k as f64);
        r = r.max(q);
    }
    let r = (2.0 * r).clamp(1e-3, 1e12);
    (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Cx::new(
                Dyadic::from_f64(center + r * th.cos()),
                Dyadic::from_f64(r * th.sin()),
            )
        })
        .collect()
}

/// Aberth–Ehrlich steps at precision `p` until corrections stall near the
/// working precision or `max_iter` is reached.
fn aberth(coeffs: &[Dyadic], z: &mut [Cx], p: u32, max_iter: usize) {
    let n = z.len();
    let one = Cx::new(Dyadic::from_i64(1), Dyadic::zero());
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all_small = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (fz, dfz) = eval_approx(coeffs, &z[i], p);
            if fz.re.is_zero() && fz.im.is_zero() {
                done[i] = true;
                continue;
            }
            let Some(newton) = fz.div(&dfz, p) else {
                // stationary point: nudge
                let eps = Dyadic::new(BigInt::from(1), -(p as i64) / 4);
                z[i] = Cx::new(z[i].re.add(&eps), z[i].im.add(&eps));
                all_small = false;
                continue;
            };
            let mut s = Cx::new(Dyadic::zero(), Dyadic::zero());
            for j in 0..n {
                if j != i {
                    if let Some(inv) = one.div(&z[i].sub(&z[j], p), p) {
                        s = s.add(&inv, p);
                    }
                }
            }
            let denom = one.sub(&newton.mul(&s, p), p);
            let w = newton.div(&denom, p).unwrap_or(newton);
            z[i] = z[i].sub(&w, p);
            let scale = z[i].mag_log2().unwrap_or(0).max(0);
            match w.mag_log2() {
                Some(lw) if lw > scale - i64::from(p) + 6 => all_small = false,
                _ => done[i] = true,
            }
        }
        if all_small {
            break;
        }
    }
}

/// Radius `n·|f(z)|/|f'(z)|` rounded up, or `None` when `f'(z) = 0`.
fn certify_radius(coeffs: &[Dyadic], z: &Cx) -> Option<Mag> {
    let n = coeffs.len() - 1;
    let ((fr, fi), (dr, di)) = eval_exact(coeffs, &z.re, &z.im);
    let num = fr.mul(&fr).add(&fi.mul(&fi));
    let den = dr.mul(&dr).add(&di.mul(&di));
    let r = Mag::sqrt_ratio_upper(&num, &den)?;
    Some(r.mul(&Mag::from_u64(n as u64)))
}

fn pairwise_disjoint(balls: &[ComplexBall]) -> bool {
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if !balls[i].disjoint(&balls[j]) {
                return false;
            }
        }
    }
    true
}

fn certify(coeffs: &[Dyadic], z: &[Cx]) -> Option<Vec<ComplexBall>> {
    let balls = z
        .iter()
        .map(|zi| {
            certify_radius(coeffs, zi).map(|rad| ComplexBall {
                re: zi.re.clone(),
                im: zi.im.clone(),
                rad,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    pairwise_disjoint(&balls).then_some(balls)
}

fn integer_form(f: &QPoly) -> Result<ZPoly, RootError> {
    match f.degree() {
        None => return Err(RootError::ZeroPolynomial),
        Some(0) => return Err(RootError::Constant),
        _ => {}
    }
    if !f.is_squarefree() {
        return Err(RootError::NotSquarefree);
    }
    let (_, z) = f.primitive();
    Ok(z)
}

/// Isolates all roots of a squarefree `f`, starting at `precision` bits and
/// doubling up to the ceiling. Balls come sorted by real then imaginary
/// part of their centers.
pub fn isolate_roots(f: &QPoly, precision: u32) -> Result<RootEnclosures, RootError> {
    isolate_roots_with_ceiling(f, precision, precision_ceiling())
}

pub fn isolate_roots_with_ceiling(
    f: &QPoly,
    precision: u32,
    ceiling: u32,
) -> Result<RootEnclosures, RootError> {
    let poly = integer_form(f)?;
    let coeffs: Vec<Dyadic> = poly.coeffs().iter().map(Dyadic::from_int).collect();
    let n = poly.degree().unwrap();
    let mut p = precision.max(32);
    if p > ceiling {
        return Err(RootError::PrecisionCeiling(ceiling));
    }
    if n == 1 {
        // exact: −a0/a1 is generally not dyadic, so enclose it
        let (a0, a1) = (poly.coeff(0), poly.coeff(1));
        let x = Dyadic::from_int(&-a0).div_approx(&Dyadic::from_int(&a1), p).unwrap();
        let z = Cx::new(x, Dyadic::zero());
        let rad = certify_radius(&coeffs, &z).unwrap();
        let ball = ComplexBall { re: z.re, im: z.im, rad };
        return Ok(RootEnclosures { poly, balls: vec![ball], precision: p, ceiling });
    }
    let mut z = initial_points(&poly);
    let mut iters = 500;
    loop {
        aberth(&coeffs, &mut z, p, iters);
        if let Some(mut balls) = certify(&coeffs, &z) {
            balls.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
            return Ok(RootEnclosures { poly, balls, precision: p, ceiling });
        }
        if p.saturating_mul(2) > ceiling {
            return Err(RootError::PrecisionCeiling(ceiling));
        }
        p *= 2;
        iters = 100;
    }
}

impl RootEnclosures {
    pub fn degree(&self) -> usize {
        self.balls.len()
    }

    pub fn ceiling(&self) -> u32 {
        self.ceiling
    }

    /// Doubles the precision and shrinks every ball; ball `i` still
    /// encloses root `i`.
    pub fn refine(&self) -> Result<RootEnclosures, RootError> {
        let p = self.precision.saturating_mul(2);
        if p > self.ceiling {
            return Err(RootError::PrecisionCeiling(self.ceiling));
        }
        let coeffs: Vec<Dyadic> = self.poly.coeffs().iter().map(Dyadic::from_int).collect();
        let mut z: Vec<Cx> = self
            .balls
            .iter()
            .map(|b| Cx::new(b.re.clone(), b.im.clone()))
            .collect();
        let mut q = p;
        loop {
            if z.len() == 1 {
                let (a0, a1) = (self.poly.coeff(0), self.poly.coeff(1));
                z[0] = Cx::new(
                    Dyadic::from_int(&-a0).div_approx(&Dyadic::from_int(&a1), q).unwrap(),
                    Dyadic::zero(),
                );
            } else {
                aberth(&coeffs, &mut z, q, 60);
            }
            if let Some(balls) = certify(&coeffs, &z) {
                let assigned = balls.iter().enumerate().all(|(i, b)| {
                    b.inside(&self.balls[i])
                        || self
                            .balls
                            .iter()
                            .enumerate()
                            .all(|(j, old)| j == i || b.disjoint(old))
                });
                if !assigned {
                    return Err(RootError::Internal("refinement lost root assignment".into()));
                }
                // keep a ball that was already tighter (exact roots)
                let balls = balls
                    .into_iter()
                    .zip(&self.balls)
                    .map(|(b, old)| if old.rad.is_zero() { old.clone() } else { b })
                    .collect();
                return Ok(RootEnclosures {
                    poly: self.poly.clone(),
                    balls,
                    precision: q,
                    ceiling: self.ceiling,
                });
            }
            if q.saturating_mul(2) > self.ceiling {
                return Err(RootError::PrecisionCeiling(self.ceiling));
            }
            q *= 2;
        }
    }

    /// Refines until every radius is below `2^-bits`.
    pub fn refine_until(&self, bits: i64) -> Result<RootEnclosures, RootError> {
        let mut r = self.clone();
        while r.max_radius_log2() >= -bits {
            r = r.refine()?;
        }
        Ok(r)
    }

    /// `floor(log2)` of the largest radius (very negative if all are exact).
    pub fn max_radius_log2(&self) -> i64 {
        self.balls
            .iter()
            .filter_map(|b| b.rad.log2_floor())
            .max()
            .unwrap_or(i64::MIN / 2)
    }

    pub fn permuted(&self, order: &[usize]) -> RootEnclosures {
        RootEnclosures {
            poly: self.poly.clone(),
            balls: order.iter().map(|&i| self.balls[i].clone()).collect(),
            precision: self.precision,
            ceiling: self.ceiling,
        }
    }

    /// Index of the unique ball that may meet `b`, if unique.
    fn unique_meeting(&self, b: &ComplexBall) -> Option<usize> {
        let mut hits = self
            .balls
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.disjoint(b))
            .map(|(i, _)| i);
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    }

    /// Complex conjugation as a permutation of root indices, refining until
    /// it is determined.
    pub fn conjugation(&self) -> Result<(Vec<usize>, RootEnclosures), RootError> {
        let mut r = self.clone();
        loop {
            let perm: Option<Vec<usize>> =
                r.balls.iter().map(|b| r.unique_meeting(&b.conj())).collect();
            if let Some(perm) = perm {
                if is_involution(&perm) {
                    return Ok((perm, r));
                }
            }
            r = r.refine()?;
        }
    }

    /// Reorders balls so positions `(2i, 2i+1)` hold pairs `{α, −1−α}`.
    /// The caller guarantees `f(−1−t) = ±f(t)`.
    pub fn pair_self_reciprocal(&self) -> Result<RootEnclosures, RootError> {
        if self.degree() % 2 == 1 {
            return Err(RootError::PairingAmbiguous);
        }
        let minus_one = Dyadic::from_i64(-1);
        let mut r = self.clone();
        loop {
            let partner: Option<Vec<usize>> = r
                .balls
                .iter()
                .map(|b| {
                    let m = ComplexBall { re: minus_one.sub(&b.re), im: b.im.neg(), rad: b.rad };
                    r.unique_meeting(&m)
                })
                .collect();
            if let Some(partner) = partner {
                let ok = is_involution(&partner)
                    && partner.iter().enumerate().all(|(i, &j)| i != j);
                if ok {
                    let mut order = Vec::with_capacity(partner.len());
                    for i in 0..partner.len() {
                        if partner[i] > i {
                            order.push(i);
                            order.push(partner[i]);
                        }
                    }
                    return Ok(r.permuted(&order));
                }
            }
            r = r.refine().map_err(|e| match e {
                RootError::PrecisionCeiling(_) => RootError::PairingAmbiguous,
                other => other,
            })?;
        }
    }

    /// Ball enclosure of `f(ball)` for each ball, for checks.
    pub fn residual_balls(&self) -> Vec<ComplexBall> {
        let p = self.precision + 64;
        self.balls
            .iter()
            .map(|b| {
                let mut acc = ComplexBall::zero();
                for c in self.poly.coeffs().iter().rev() {
                    acc = acc.mul(b, p).add(&ComplexBall::from_int(c), p);
                }
                acc
            })
            .collect()
    }
}

fn is_involution(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &j)| p[j] == i)
}
