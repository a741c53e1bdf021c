//! Self-reciprocal polynomials `f(−1−t) = ±f(t)`: roots pair up as
//! `{α, −1−α}` over the roots `u = α² + α` of `g`, so `Gal(f) ≤ C₂ ≀ Gal(g)`.
//! The kernel `K = Gal(f) ∩ C₂^k` is found from square classes and at most
//! one resolvent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::descent::{entry_label, root_centers, stauduhar_descent, DescentTrace, TraceStep};
use super::invariant::InvariantPoly;
use super::resolvent::{resolvent_test, LabelledRoots};
use super::{GaloisError, GaloisOptions};
use crate::permgrp::{block_action, invariant_subspaces, Perm, PermGroup, TransitiveTable};
use crate::polyalg::{discriminant, is_square_rational, QPoly, ZPoly};
use crate::roots::{isolate_roots_with_ceiling, ComplexBall};

/// `(ε, g)` with `f = (2t+1)^ε · g(t² + t)` when `f(−1−t) = (−1)^{deg f} f(t)`.
pub fn detect_self_reciprocal(f: &ZPoly) -> Option<(u8, QPoly)> {
    let q = f.to_qpoly();
    let n = q.degree()?;
    let mirrored = q.compose(&QPoly::from_ints(&[-1, -1]));
    let target = if n % 2 == 0 { q.clone() } else { -&q };
    if mirrored != target {
        return None;
    }
    let (eps, mut h) = if n % 2 == 1 {
        let (quo, rem) = q.div_rem(&QPoly::from_ints(&[1, 2])).ok()?;
        if !rem.is_zero() {
            return None;
        }
        (1, quo)
    } else {
        (0, q)
    };
    let u = QPoly::from_ints(&[0, 1, 1]);
    let mut coeffs = Vec::new();
    while !h.is_zero() {
        let (quo, rem) = h.div_rem(&u).ok()?;
        if !rem.coeff(1).is_zero() {
            return None;
        }
        coeffs.push(rem.coeff(0));
        h = quo;
    }
    Some((eps, QPoly::new(coeffs)))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WreathDiagnostics {
    pub k: usize,
    pub quotient: String,
    pub quotient_order: u64,
    /// `∏(1 + 4u_i) = (−4)^k g(−1/4) / lc(g)`.
    pub d0: String,
    pub disc_g: String,
    pub d0_square: bool,
    pub d0_disc_square: bool,
    /// The ball product `∏(1 + 4u_i)` contains `d0`.
    pub d0_ball_consistent: bool,
    pub kernel: String,
}

pub struct WreathResult {
    /// `None` when only the order range is certified.
    pub group: Option<PermGroup>,
    pub name: String,
    pub order: Option<u64>,
    pub order_bounds: (u64, u64),
    pub roots: LabelledRoots,
    pub trace: DescentTrace,
    pub diagnostics: WreathDiagnostics,
    /// Set when the kernel stayed ambiguous and direct descent decided.
    pub direct_fallback: bool,
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

fn rat_ball_contains(b: &ComplexBall, q: &BigRational, prec: u32) -> bool {
    b.mul_int(q.denom(), prec)
        .sub(&ComplexBall::from_int(q.numer()), prec)
        .contains_zero()
}

/// Galois group of an irreducible self-reciprocal `f` of degree `2k ≤ 16`
/// with `f = g(t² + t)`, through the wreath product `C₂ ≀ Gal(g)`.
pub fn wreath_path(f: &ZPoly, g: &QPoly, opts: &GaloisOptions) -> Result<WreathResult, GaloisError> {
    let n = f.degree().unwrap_or(0);
    let k = g.degree().unwrap_or(0);
    if n != 2 * k || k == 0 {
        return Err(GaloisError::UnsupportedStructure(format!(
            "degree {n} polynomial is not g(t^2+t) with deg g = {k}"
        )));
    }
    if k > 8 {
        return Err(GaloisError::UnsupportedDegree(n));
    }
    let table = TransitiveTable::bundled();
    let (_, gz) = g.primitive();

    // quotient Q = Gal(g) on the roots of g
    let (q_group, q_name, mut g_roots, q_trace) = if k == 1 {
        let enc = isolate_roots_with_ceiling(g, opts.start_precision, opts.ceiling())?;
        (PermGroup::trivial(1), "1".to_string(), LabelledRoots::new(enc), None)
    } else {
        let d = stauduhar_descent(&gz, opts)?;
        (d.entry.group.clone(), entry_label(d.entry), d.roots, Some(d.trace))
    };
    let q_order = q_group.order();
    let is_sk = q_order == factorial(k);
    let is_ak = k >= 3 && q_order * 2 == factorial(k) && !q_group.has_odd_permutation();

    let fallback = |why: String| -> Result<WreathResult, GaloisError> {
        if n > 8 {
            return Err(GaloisError::UnsupportedStructure(why));
        }
        let d = stauduhar_descent(f, opts)?;
        let diagnostics = WreathDiagnostics {
            k,
            quotient: q_name.clone(),
            quotient_order: q_order,
            d0: String::new(),
            disc_g: String::new(),
            d0_square: false,
            d0_disc_square: false,
            d0_ball_consistent: true,
            kernel: format!("not classified ({why}); direct descent"),
        };
        Ok(WreathResult {
            group: Some(d.entry.group.clone()),
            name: d.entry.name.clone(),
            order: Some(d.entry.order),
            order_bounds: (d.entry.order, d.entry.order),
            roots: d.roots,
            trace: d.trace,
            diagnostics,
            direct_fallback: true,
        })
    };
    if !is_sk && !is_ak {
        return fallback(format!("quotient {q_name} is neither S{k} nor A{k}"));
    }

    // pair the roots of f over the labelled roots of g
    let enc = isolate_roots_with_ceiling(&f.to_qpoly(), opts.start_precision, opts.ceiling())?;
    let mut paired = enc.pair_self_reciprocal()?;
    let matching = loop {
        let prec = paired.precision + 32;
        let us: Vec<ComplexBall> = (0..k)
            .map(|i| {
                let a = &paired.balls[2 * i];
                a.mul(&a.add(&ComplexBall::from_i64(1), prec), prec)
            })
            .collect();
        let m: Option<Vec<usize>> = us
            .iter()
            .map(|u| {
                let hits: Vec<usize> = (0..k).filter(|&j| !g_roots.ball(j).disjoint(u)).collect();
                (hits.len() == 1).then(|| hits[0])
            })
            .collect();
        if let Some(m) = m {
            let mut seen = vec![false; k];
            if m.iter().all(|&j| !std::mem::replace(&mut seen[j], true)) {
                break (m, us);
            }
        }
        paired = paired.refine()?;
        g_roots.refine()?;
    };
    let (matching, us) = matching;
    let mut order = vec![0usize; n];
    for (i, &j) in matching.iter().enumerate() {
        order[2 * j] = 2 * i;
        order[2 * j + 1] = 2 * i + 1;
    }
    let mut roots = LabelledRoots { enclosures: paired, order };
    let us_by_label: Vec<ComplexBall> = {
        let mut v = vec![ComplexBall::zero(); k];
        for (i, &j) in matching.iter().enumerate() {
            v[j] = us[i].clone();
        }
        v
    };

    let flip = Perm::from_cycles(n, "(1,2)")?;
    let mut w_gens: Vec<Perm> = q_group.generators().iter().map(|q| block_action(k, q)).collect();
    w_gens.push(flip);
    let w = PermGroup::new(n, &w_gens)?;

    // square classes
    let lc = g.leading_coeff();
    let quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
    let d0 = g.evaluate(&quarter) * BigRational::from_integer(BigInt::from(-4).pow(k as u32)) / &lc;
    let disc_g = if k == 1 { BigRational::one() } else { discriminant(g)? };
    let prec = roots.precision() + 32;
    let ball = us_by_label.iter().fold(ComplexBall::from_i64(1), |acc, u| {
        acc.mul(&u.mul_int(&BigInt::from(4), prec).add(&ComplexBall::from_i64(1), prec), prec)
    });
    let d0_ball_consistent = rat_ball_contains(&ball, &d0, prec);
    if !d0_ball_consistent {
        return Err(GaloisError::Internal("ball product disagrees with exact D0".into()));
    }
    let d0_square = is_square_rational(&d0);
    let d0_disc_square = is_square_rational(&(&d0 * &disc_g));
    let chi_in = d0_square || d0_disc_square;

    // candidates for K^⊥: Q-invariant subspaces whose membership of the
    // all-ones character matches the square test
    let all_ones: u32 = (1u32 << k) - 1;
    let candidates: Vec<_> = invariant_subspaces(k, q_group.generators())?
        .into_iter()
        .filter(|v| v.contains(all_ones) == chi_in)
        .collect();
    let orders: Vec<u64> = candidates
        .iter()
        .map(|v| q_order << (k - v.dim()))
        .collect();
    let lo = *orders.iter().min().unwrap_or(&q_order);
    let hi = *orders.iter().max().unwrap_or(&q_order);

    let mut diagnostics = WreathDiagnostics {
        k,
        quotient: q_name.clone(),
        quotient_order: q_order,
        d0: crate::polyalg::rational_to_string(&d0),
        disc_g: crate::polyalg::rational_to_string(&disc_g),
        d0_square,
        d0_disc_square,
        d0_ball_consistent,
        kernel: String::new(),
    };
    let mut steps: Vec<TraceStep> = Vec::new();
    let qname_short = if is_sk { format!("S{k}") } else { format!("A{k}") };
    let w_label = format!("C2wr{qname_short} (block pairs over {q_name})");

    let full_kernel = candidates.len() == 1 && candidates[0].dim() == 0;
    let line_or_full = candidates.len() == 2
        && candidates.iter().any(|v| v.dim() == 0)
        && candidates
            .iter()
            .any(|v| v.dim() == k - 1 && v.perp().contains(all_ones));
    let (group, name, kernel) = if full_kernel {
        (Some(w.clone()), format!("C2wr{qname_short}"), "full")
    } else if line_or_full && k >= 2 {
        let mut h_gens: Vec<Perm> =
            q_group.generators().iter().map(|q| block_action(k, q)).collect();
        let all_flip: Vec<usize> = (0..n).map(|i| i ^ 1).collect();
        h_gens.push(Perm::from_images(&all_flip)?);
        let h = PermGroup::new(n, &h_gens)?;
        let coeffs: Vec<i8> = (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        let inv = InvariantPoly::squared_linear(coeffs);
        if !inv.has_stabilizer(&w, &h) {
            return Err(GaloisError::Internal("wreath invariant has the wrong stabilizer".into()));
        }
        let (outcome, reps) = resolvent_test(&mut roots, &w, &h, &inv, opts)?;
        let accepted = outcome.accepted;
        steps.push(TraceStep {
            group: w_label.clone(),
            group_order: w.order(),
            subgroup: format!("C2x{qname_short} (all-flip times diagonal {q_name})"),
            subgroup_order: h.order(),
            invariant: inv.description.clone(),
            outcome,
        });
        match accepted {
            Some(j) => {
                roots = roots.relabel(&reps[j]);
                (Some(h), format!("C2x{qname_short}"), "all-ones line")
            }
            None => (Some(w.clone()), format!("C2wr{qname_short}"), "full"),
        }
    } else if candidates.len() == 1 {
        (None, format!("C2wr{qname_short} subgroup"), "determined by square classes")
    } else {
        diagnostics.kernel = "undetermined".into();
        if n <= 8 {
            let d = stauduhar_descent(f, opts)?;
            diagnostics.kernel = "undetermined by square classes; direct descent".into();
            return Ok(WreathResult {
                group: Some(d.entry.group.clone()),
                name: d.entry.name.clone(),
                order: Some(d.entry.order),
                order_bounds: (d.entry.order, d.entry.order),
                roots: d.roots,
                trace: d.trace,
                diagnostics,
                direct_fallback: true,
            });
        }
        let trace = DescentTrace {
            start: w_label,
            steps,
            root_centers: root_centers(&roots),
            tschirnhaus_seed: opts.seed,
            quotient: q_trace.map(Box::new),
        };
        return Ok(WreathResult {
            group: None,
            name: format!("subgroup of C2wr{qname_short}"),
            order: None,
            order_bounds: (lo, hi),
            roots,
            trace,
            diagnostics,
            direct_fallback: false,
        });
    };
    diagnostics.kernel = kernel.into();
    let order = group.as_ref().map_or(lo, PermGroup::order);
    // small degrees carry their table name
    let name = match &group {
        Some(gr) if n <= 8 && n >= 2 => table.identify(gr).map(|(e, _)| e.name.clone()).unwrap_or(name),
        _ => name,
    };
    let trace = DescentTrace {
        start: w_label,
        steps,
        root_centers: root_centers(&roots),
        tschirnhaus_seed: opts.seed,
        quotient: q_trace.map(Box::new),
    };
    Ok(WreathResult {
        group,
        name,
        order: Some(order),
        order_bounds: (order, order),
        roots,
        trace,
        diagnostics,
        direct_fallback: false,
    })
}
