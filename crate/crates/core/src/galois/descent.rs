//! Descent through the table of transitive groups.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::invariant::{relative_invariant, InvariantPoly};
use super::resolvent::{resolvent_test, LabelledRoots, ResolventOutcome};
use super::{GaloisError, GaloisOptions};
use crate::permgrp::{TransitiveTable, TransitiveTableEntry};
use crate::polyalg::ZPoly;
use crate::roots::isolate_roots_with_ceiling;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TraceStep {
    pub group: String,
    pub group_order: u64,
    pub subgroup: String,
    pub subgroup_order: u64,
    pub invariant: String,
    #[serde(flatten)]
    pub outcome: ResolventOutcome,
}

/// The certificate of a descent: every resolvent test in order, the final
/// root labelling and, for the wreath path, the descent for the quotient.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct DescentTrace {
    pub start: String,
    pub steps: Vec<TraceStep>,
    /// Label `i` is the root whose ball center is `root_centers[i]`.
    pub root_centers: Vec<String>,
    pub tschirnhaus_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Box<DescentTrace>>,
}

impl DescentTrace {
    /// Product of the coset counts of the accepted steps.
    pub fn accepted_index_product(&self) -> u64 {
        self.steps
            .iter()
            .filter(|s| s.outcome.accepted.is_some())
            .map(|s| s.outcome.cosets as u64)
            .product()
    }
}

pub(crate) fn root_centers(roots: &LabelledRoots) -> Vec<String> {
    (0..roots.degree())
        .map(|i| {
            let b = roots.ball(i);
            format!("{:.12e}{:+.12e}i", b.re.to_f64(), b.im.to_f64())
        })
        .collect()
}

pub(crate) fn entry_label(e: &TransitiveTableEntry) -> String {
    format!("{}T{} {}", e.degree, e.index, e.name)
}

pub struct Descent {
    pub entry: &'static TransitiveTableEntry,
    /// Labelled so that the Galois group is contained in `entry.group`;
    /// descent stops only when no maximal subgroup accepts, so it is equal.
    pub roots: LabelledRoots,
    pub trace: DescentTrace,
}

type InvariantCache = Mutex<HashMap<(usize, usize, usize), Arc<InvariantPoly>>>;

fn cache() -> &'static InvariantCache {
    static CACHE: OnceLock<InvariantCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The invariant for the `k`-th maximal subgroup of table entry `e`,
/// written for the pair `(e.group^{emb⁻¹}, sub)`.
pub fn table_invariant(
    e: &TransitiveTableEntry,
    k: usize,
) -> Result<Arc<InvariantPoly>, GaloisError> {
    let key = (e.degree, e.index, k);
    if let Some(f) = cache().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let table = TransitiveTable::bundled();
    let m = &e.maximal_subgroups[k];
    let sub = table
        .entry(e.degree, m.index)
        .ok_or_else(|| GaloisError::TableInconsistency(format!("missing entry {}", m.index)))?;
    let g = e.group.conjugate(&m.embedding.inverse());
    let f = relative_invariant(&g, &sub.group)?;
    if !f.has_stabilizer(&g, &sub.group) {
        return Err(GaloisError::TableInconsistency(format!(
            "invariant for {} in {} has the wrong stabilizer",
            entry_label(sub),
            entry_label(e)
        )));
    }
    let f = Arc::new(f);
    cache().lock().unwrap().insert(key, f.clone());
    Ok(f)
}

/// Stauduhar descent for an irreducible integer polynomial of degree 2–8,
/// starting from the symmetric group.
pub fn stauduhar_descent(f: &ZPoly, opts: &GaloisOptions) -> Result<Descent, GaloisError> {
    let n = f.degree().unwrap_or(0);
    if !(2..=8).contains(&n) {
        return Err(GaloisError::UnsupportedDegree(n));
    }
    let table = TransitiveTable::bundled();
    let start = table
        .symmetric(n)
        .ok_or_else(|| GaloisError::TableInconsistency(format!("no degree {n} entries")))?;
    let enc = isolate_roots_with_ceiling(&f.to_qpoly(), opts.start_precision, opts.ceiling())?;
    descend_from(LabelledRoots::new(enc), start, opts)
}

/// Descent from `start`, assuming the Galois group is contained in
/// `start.group` in the labelling of `roots`.
pub fn descend_from(
    mut roots: LabelledRoots,
    start: &'static TransitiveTableEntry,
    opts: &GaloisOptions,
) -> Result<Descent, GaloisError> {
    let table = TransitiveTable::bundled();
    let mut e = start;
    let mut steps = Vec::new();
    'outer: loop {
        for (k, m) in e.maximal_subgroups.iter().enumerate() {
            let sub = table.entry(e.degree, m.index).ok_or_else(|| {
                GaloisError::TableInconsistency(format!("missing entry {}", m.index))
            })?;
            let g = e.group.conjugate(&m.embedding.inverse());
            let inv = table_invariant(e, k)?;
            let mut rel = roots.relabel(&m.embedding);
            let (outcome, reps) = resolvent_test(&mut rel, &g, &sub.group, &inv, opts)?;
            roots.enclosures = rel.enclosures.clone();
            let accepted = outcome.accepted;
            steps.push(TraceStep {
                group: entry_label(e),
                group_order: e.order,
                subgroup: entry_label(sub),
                subgroup_order: sub.order,
                invariant: inv.description.clone(),
                outcome,
            });
            if let Some(j) = accepted {
                roots = rel.relabel(&reps[j]);
                e = sub;
                continue 'outer;
            }
        }
        break;
    }
    let trace = DescentTrace {
        start: entry_label(start),
        steps,
        root_centers: root_centers(&roots),
        tschirnhaus_seed: opts.seed,
        quotient: None,
    };
    Ok(Descent { entry: e, roots, trace })
}
