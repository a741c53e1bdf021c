//! Galois groups of rational polynomials.
//!
//! Each irreducible factor of degree at most 8 is handled by Stauduhar
//! descent from the symmetric group: for every maximal transitive subgroup
//! `H` of the current group `G`, a `G`-relative `H`-invariant is evaluated
//! on certified root enclosures at every coset, and an integer value at a
//! simple root of the resolvent moves the descent into `H^τ`. Self-reciprocal
//! factors of degree up to 16 go through `C₂ ≀ Gal(g)` instead.

mod descent;
mod invariant;
mod resolvent;
mod sample;
mod wreath;

use num_integer::Integer;
use serde::{Serialize, Serializer};

pub use descent::{descend_from, stauduhar_descent, table_invariant, Descent, DescentTrace, TraceStep};
pub use invariant::{relative_invariant, InvariantKind, InvariantPoly, MAX_INVARIANT_DEGREE};
pub use resolvent::{
    relabel_perm, resolvent_test, tschirnhaus_schedule, LabelledRoots, ResolventOutcome, Tschirnhaus,
};
pub use sample::{group_has_cycle_types, sample_cycle_types};
pub use wreath::{detect_self_reciprocal, wreath_path, WreathDiagnostics, WreathResult};

use crate::permgrp::{GroupError, PermGroup};
use crate::polyalg::{factor, PolyError, QPoly, ZPoly};
use crate::roots::RootError;

#[derive(Debug, thiserror::Error)]
pub enum GaloisError {
    #[error("constant polynomial")]
    Constant,
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),
    #[error("precision ceiling of {0} bits exceeded")]
    PrecisionCeiling(u32),
    #[error("every Tschirnhaus substitution left the resolvent with repeated roots")]
    TschirnhausExhausted,
    #[error("invariant search budget exhausted: {0}")]
    SearchBudgetExhausted(String),
    #[error("subgroup is not a proper subgroup")]
    NotProperSubgroup,
    #[error("transitive table inconsistency: {0}")]
    TableInconsistency(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<RootError> for GaloisError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::PrecisionCeiling(p) => GaloisError::PrecisionCeiling(p),
            other => GaloisError::Internal(other.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GaloisOptions {
    /// Filter cosets by complex conjugation before evaluating all of them.
    pub short_cosets: bool,
    pub start_precision: u32,
    /// Overrides `EHRLAB_PRECISION_CEILING` when set.
    pub precision_ceiling: Option<u32>,
    pub tschirnhaus_attempts: usize,
    pub seed: u64,
}

impl Default for GaloisOptions {
    fn default() -> Self {
        GaloisOptions {
            short_cosets: false,
            start_precision: crate::roots::START_PRECISION,
            precision_ceiling: None,
            tschirnhaus_attempts: 20,
            seed: 0x7a11_5eed,
        }
    }
}

impl GaloisOptions {
    pub fn ceiling(&self) -> u32 {
        self.precision_ceiling
            .unwrap_or_else(crate::roots::precision_ceiling)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Linear,
    DirectDescent,
    WreathPath,
}

fn serialize_group<S: Serializer>(g: &Option<PermGroup>, s: S) -> Result<S::Ok, S::Error> {
    match g {
        None => s.serialize_none(),
        Some(g) => {
            let gens: Vec<String> = g.generators().iter().map(|p| p.to_cycle_string()).collect();
            gens.serialize(s)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorResult {
    /// Coefficients of the primitive factor, constant term first.
    pub factor: Vec<String>,
    pub multiplicity: usize,
    pub degree: usize,
    pub method: Method,
    pub name: String,
    /// `nTk` position in the transitive table, when known.
    pub transitive_id: Option<String>,
    pub order: Option<u64>,
    /// Certified range for the order; equal ends when the order is known.
    pub order_bounds: [u64; 2],
    /// Generators acting on the root labels of the certificate.
    #[serde(rename = "generators", serialize_with = "serialize_group")]
    pub group: Option<PermGroup>,
    pub certificate: DescentTrace,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wreath: Option<WreathDiagnostics>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisResult {
    /// Input coefficients, constant term first.
    pub input: Vec<String>,
    pub factors: Vec<FactorResult>,
    pub combined_order_lower_bound: u64,
    pub combined_order_exact: Option<u64>,
    pub notes: Vec<String>,
}

pub fn galois_group(f: &QPoly) -> Result<GaloisResult, GaloisError> {
    galois_group_with(f, &GaloisOptions::default())
}

fn coeff_strings(z: &ZPoly) -> Vec<String> {
    z.coeffs().iter().map(|c| c.to_string()).collect()
}

/// The group of one irreducible primitive factor.
pub fn galois_group_irreducible(z: &ZPoly, opts: &GaloisOptions) -> Result<FactorResult, GaloisError> {
    let n = z.degree().unwrap_or(0);
    let base = |method, name: String, id, order: Option<u64>, bounds, group, cert| FactorResult {
        factor: coeff_strings(z),
        multiplicity: 1,
        degree: n,
        method,
        name,
        transitive_id: id,
        order,
        order_bounds: bounds,
        group,
        certificate: cert,
        wreath: None,
    };
    if n == 0 {
        return Err(GaloisError::Constant);
    }
    if n == 1 {
        return Ok(base(
            Method::Linear,
            "1".into(),
            None,
            Some(1),
            [1, 1],
            Some(PermGroup::trivial(1)),
            DescentTrace { start: "1".into(), tschirnhaus_seed: opts.seed, ..Default::default() },
        ));
    }
    if n <= 8 {
        let d = stauduhar_descent(z, opts)?;
        return Ok(base(
            Method::DirectDescent,
            d.entry.name.clone(),
            Some(format!("{}T{}", d.entry.degree, d.entry.index)),
            Some(d.entry.order),
            [d.entry.order; 2],
            Some(d.entry.group.clone()),
            d.trace,
        ));
    }
    match detect_self_reciprocal(z) {
        Some((0, g)) if n <= 16 => {
            let w = wreath_path(z, &g, opts)?;
            let mut out = base(
                Method::WreathPath,
                w.name,
                None,
                w.order,
                [w.order_bounds.0, w.order_bounds.1],
                w.group,
                w.trace,
            );
            out.wreath = Some(w.diagnostics);
            Ok(out)
        }
        _ => Err(GaloisError::UnsupportedDegree(n)),
    }
}

/// Galois group of a nonconstant rational polynomial, factor by factor.
///
/// Multiplicities do not change the splitting field and are dropped. The
/// combined order is exact when at most one factor is nonlinear, or when the
/// factor orders are pairwise coprime (then the splitting fields meet only
/// in ℚ); otherwise the lcm of the factor orders is reported as a lower
/// bound.
pub fn galois_group_with(f: &QPoly, opts: &GaloisOptions) -> Result<GaloisResult, GaloisError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(GaloisError::Constant);
    }
    let fac = factor(f)?;
    let mut factors = Vec::new();
    for (z, mult) in &fac.factors {
        let mut r = galois_group_irreducible(z, opts)?;
        r.multiplicity = *mult;
        factors.push(r);
    }
    let nonlinear: Vec<&FactorResult> = factors.iter().filter(|r| r.degree > 1).collect();
    let lower = nonlinear
        .iter()
        .map(|r| r.order_bounds[0])
        .fold(1u64, |a, b| a.lcm(&b));
    let mut notes = Vec::new();
    let exact = if nonlinear.len() <= 1 {
        nonlinear.first().map_or(Some(1), |r| r.order)
    } else {
        let orders: Option<Vec<u64>> = nonlinear.iter().map(|r| r.order).collect();
        match orders {
            Some(o) if o.iter().enumerate().all(|(i, a)| o[i + 1..].iter().all(|b| a.gcd(b) == 1)) => {
                notes.push("factor orders are pairwise coprime; splitting fields are disjoint".into());
                Some(o.iter().product())
            }
            _ => {
                notes.push(
                    "several nonlinear factors: combined order is only bounded below by the lcm of the factor orders"
                        .into(),
                );
                None
            }
        }
    };
    let (_, prim) = f.primitive();
    Ok(GaloisResult {
        input: f.to_coeff_strings(),
        factors,
        combined_order_lower_bound: exact.unwrap_or(lower),
        combined_order_exact: exact,
        notes: {
            if fac.factors.iter().any(|(_, m)| *m > 1) {
                notes.push(format!("repeated factors of {prim} dropped"));
            }
            notes
        },
    })
}
