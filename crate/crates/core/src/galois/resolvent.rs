//! Resolvent tests over labelled root enclosures.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::invariant::InvariantPoly;
use super::{GaloisError, GaloisOptions};
use crate::permgrp::{Perm, PermGroup};
use crate::polyalg::modp::{is_prime, FpPoly};
use crate::polyalg::ZPoly;
use crate::roots::{ComplexBall, Mag, RootEnclosures};

/// `σ` rewritten for the labelling `β_i = α_{c(i)}`: `i ↦ c⁻¹(σ(c(i)))`.
pub fn relabel_perm(s: &Perm, c: &Perm) -> Perm {
    s.conjugate_by(&c.inverse())
}

/// Root enclosures of an integer polynomial with a labelling: label `i` is
/// the ball `order[i]`. Invariants are evaluated on `lc·α`, which are
/// algebraic integers.
#[derive(Clone, Debug)]
pub struct LabelledRoots {
    pub enclosures: RootEnclosures,
    pub order: Vec<usize>,
}

impl LabelledRoots {
    pub fn new(enclosures: RootEnclosures) -> Self {
        let order = (0..enclosures.degree()).collect();
        LabelledRoots { enclosures, order }
    }

    pub fn degree(&self) -> usize {
        self.order.len()
    }

    pub fn precision(&self) -> u32 {
        self.enclosures.precision
    }

    /// New labels `β_i = α_{c(i)}`.
    pub fn relabel(&self, c: &Perm) -> Self {
        LabelledRoots {
            enclosures: self.enclosures.clone(),
            order: (0..self.degree()).map(|i| self.order[c.image(i)]).collect(),
        }
    }

    pub fn refine(&mut self) -> Result<(), GaloisError> {
        self.enclosures = self.enclosures.refine()?;
        Ok(())
    }

    /// Ball of root label `i`.
    pub fn ball(&self, i: usize) -> &ComplexBall {
        &self.enclosures.balls[self.order[i]]
    }

    /// `lc·α_i` for every label.
    pub fn scaled(&self, prec: u32) -> Vec<ComplexBall> {
        let lc = self.enclosures.poly.leading_coeff();
        (0..self.degree()).map(|i| self.ball(i).mul_int(&lc, prec)).collect()
    }

    /// Complex conjugation as a permutation of labels.
    pub fn conjugation(&mut self) -> Result<Perm, GaloisError> {
        let (perm, refined) = self.enclosures.conjugation()?;
        self.enclosures = refined;
        let mut pos = vec![0usize; self.degree()];
        for (label, &ball) in self.order.iter().enumerate() {
            pos[ball] = label;
        }
        let images: Vec<usize> = self.order.iter().map(|&b| pos[perm[b]]).collect();
        Ok(Perm::from_images(&images)?)
    }
}

/// A Tschirnhaus substitution `α ↦ q(α)` with small integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tschirnhaus {
    pub coeffs: Vec<i64>,
}

impl Tschirnhaus {
    pub fn describe(&self) -> String {
        ZPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .to_string()
            .replace('t', "x")
    }

    fn apply(&self, z: &ComplexBall, prec: u32) -> ComplexBall {
        let mut acc = ComplexBall::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(&ComplexBall::from_i64(c), prec);
        }
        acc
    }
}

/// The fixed substitutions tried first, then seeded random ones of degree
/// at most 3 with coefficients in `[-5, 5]`; `attempts` in total.
pub fn tschirnhaus_schedule(seed: u64, attempts: usize) -> Vec<Tschirnhaus> {
    let fixed: [&[i64]; 5] = [&[1, 1], &[2, 1], &[0, 0, 1], &[0, 1, 1], &[0, 1, 0, 1]];
    let mut out: Vec<Tschirnhaus> = fixed
        .iter()
        .map(|c| Tschirnhaus { coeffs: c.to_vec() })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < attempts {
        let deg = rng.gen_range(1..=3usize);
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let t = Tschirnhaus { coeffs };
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.truncate(attempts);
    out
}

/// Outcome of one resolvent test of `H` in `G`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ResolventOutcome {
    /// Number of right cosets `Hτ` in `G`.
    pub cosets: usize,
    /// Cosets surviving the complex-conjugation filter, when it was used.
    pub short_cosets: Option<usize>,
    /// Index into the coset representatives of the accepted coset.
    pub accepted: Option<usize>,
    /// The integer value of the invariant at the accepted coset.
    pub value: Option<String>,
    /// Coefficients of the rounded resolvent, constant term first, when it
    /// was formed.
    pub resolvent: Option<Vec<String>>,
    /// Root precision at which the decision was made.
    pub precision: u32,
    pub tschirnhaus: Vec<String>,
    /// How the decision was reached.
    pub reason: String,
}

fn quarter() -> Mag {
    Mag::pow2(-2)
}

fn small(b: &ComplexBall) -> bool {
    b.rad < quarter()
}

/// `∏ (x − v_j)` in ball arithmetic, constant term first.
fn resolvent_poly(vals: &[ComplexBall], prec: u32) -> Vec<ComplexBall> {
    let mut c = vec![ComplexBall::from_i64(1)];
    for v in vals {
        let mut next = vec![ComplexBall::zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].add(a, prec);
            next[i] = next[i].sub(&a.mul(v, prec), prec);
        }
        c = next;
    }
    c
}

/// Whether a monic integer polynomial is squarefree modulo one of eight
/// primes below 2^31, which proves it squarefree. A `false` is only treated
/// as a collision and answered by another substitution.
fn is_squarefree_mod_primes(r: &ZPoly) -> bool {
    let mut p: u64 = (1 << 31) - 1;
    let mut tried = 0;
    while tried < 8 {
        if is_prime(p) {
            tried += 1;
            let fp = FpPoly::from_zpoly(r, p);
            if fp.degree() == r.degree() && fp.is_squarefree() {
                return true;
            }
        }
        p -= 2;
    }
    false
}

enum Attempt {
    Done(ResolventOutcome),
    Collision,
}

/// Decides whether `Gal(f) ≤ H^τ` for some right coset `Hτ` of `h` in `g`,
/// given `Gal(f) ≤ g` in the labelling of `roots`. `inv` must be an
/// `h`-invariant with stabilizer `h` in `g`. The value at coset `τ` is
/// `inv` evaluated at `(α_{τ(1)}, …, α_{τ(n)})`. Returns the outcome and
/// the coset representatives.
pub fn resolvent_test(
    roots: &mut LabelledRoots,
    g: &PermGroup,
    h: &PermGroup,
    inv: &InvariantPoly,
    opts: &GaloisOptions,
) -> Result<(ResolventOutcome, Vec<Perm>), GaloisError> {
    let reps = g.coset_representatives(h)?;
    let mut filter: Option<Vec<usize>> = None;
    if opts.short_cosets {
        let c = roots.conjugation()?;
        if !c.is_identity() {
            filter = Some(
                (0..reps.len())
                    .filter(|&j| h.contains(&relabel_perm(&c, &reps[j])))
                    .collect(),
            );
        }
    }
    let schedule = tschirnhaus_schedule(opts.seed, opts.tschirnhaus_attempts);
    let mut applied: Vec<String> = Vec::new();
    for attempt in 0..=schedule.len() {
        let q = if attempt == 0 { None } else { Some(&schedule[attempt - 1]) };
        if let Some(q) = q {
            applied.push(q.describe());
        }
        match attempt_once(roots, &reps, inv, q, filter.as_deref())? {
            Attempt::Done(mut out) => {
                out.tschirnhaus = applied;
                return Ok((out, reps));
            }
            Attempt::Collision => continue,
        }
    }
    Err(GaloisError::TschirnhausExhausted)
}

fn attempt_once(
    roots: &mut LabelledRoots,
    reps: &[Perm],
    inv: &InvariantPoly,
    q: Option<&Tschirnhaus>,
    filter: Option<&[usize]>,
) -> Result<Attempt, GaloisError> {
    let n = roots.degree();
    let outcome = |roots: &LabelledRoots, reason: &str| ResolventOutcome {
        cosets: reps.len(),
        short_cosets: filter.map(<[usize]>::len),
        accepted: None,
        value: None,
        resolvent: None,
        precision: roots.precision(),
        tschirnhaus: Vec::new(),
        reason: reason.to_string(),
    };
    loop {
        let prec = roots.precision() + 64;
        let mut base = roots.scaled(prec);
        if let Some(q) = q {
            base = base.iter().map(|z| q.apply(z, prec)).collect();
        }
        let value_at = |j: usize| {
            let pts: Vec<ComplexBall> = (0..n).map(|i| base[reps[j].image(i)].clone()).collect();
            inv.evaluate(&pts, prec)
        };
        if let Some(keep) = filter {
            let vals: Vec<ComplexBall> = keep.par_iter().map(|&j| value_at(j)).collect();
            if vals.iter().all(ComplexBall::excludes_integers) {
                return Ok(Attempt::Done(outcome(
                    roots,
                    "no value ball over the short cosets contains an integer",
                )));
            }
        }
        let vals: Vec<ComplexBall> = (0..reps.len()).into_par_iter().map(value_at).collect();
        if vals.iter().all(ComplexBall::excludes_integers) {
            return Ok(Attempt::Done(outcome(roots, "no value ball contains an integer")));
        }
        if vals.iter().any(|v| !v.excludes_integers() && !small(v)) {
            roots.refine()?;
            continue;
        }
        let coeffs = resolvent_poly(&vals, prec);
        let mut rounded = Vec::with_capacity(coeffs.len());
        let mut settled = true;
        for c in &coeffs {
            let (m, inside) = c.nearest_integer();
            if !small(c) {
                settled = false;
                break;
            }
            if !inside {
                return Err(GaloisError::Internal(
                    "resolvent coefficient ball contains no integer".into(),
                ));
            }
            rounded.push(m);
        }
        if !settled {
            roots.refine()?;
            continue;
        }
        let r = ZPoly::new(rounded);
        if !is_squarefree_mod_primes(&r) {
            return Ok(Attempt::Collision);
        }
        let candidates: Vec<(usize, BigInt)> = vals
            .iter()
            .enumerate()
            .filter_map(|(j, v)| {
                let (m, inside) = v.nearest_integer();
                (inside && r.evaluate(&m).is_zero()).then_some((j, m))
            })
            .collect();
        let mut ms: Vec<&BigInt> = candidates.iter().map(|c| &c.1).collect();
        ms.sort();
        ms.dedup();
        if ms.len() < candidates.len() {
            // an integer root still lies in two value balls
            roots.refine()?;
            continue;
        }
        let mut out = outcome(roots, "");
        out.resolvent = Some(r.coeffs().iter().map(BigInt::to_string).collect());
        match candidates.first() {
            None => {
                out.reason = "resolvent is squarefree and has no integer root in a value ball".into();
            }
            Some((j, m)) => {
                out.accepted = Some(*j);
                out.value = Some(m.to_string());
                out.reason = if candidates.len() == 1 {
                    "unique integer root of the squarefree resolvent".into()
                } else {
                    format!("{} integer roots; first coset taken", candidates.len())
                };
            }
        }
        return Ok(Attempt::Done(out));
    }
}
