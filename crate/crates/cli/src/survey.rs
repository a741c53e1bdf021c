//! Batch runs over a directory of polytope files.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use ehrlab_core::ehrhart::ehrhart_polynomial;
use ehrlab_core::galois::{galois_group, GaloisError};
use ehrlab_core::polytope::LatticePolytope;

use crate::Failure;

#[derive(Clone, Copy, ValueEnum)]
pub enum TallyKey {
    Order,
    Name,
}

#[derive(Args)]
pub struct SurveyArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long, value_enum, default_value = "order")]
    tally: TallyKey,
    /// Where to write one JSON record per file.
    #[arg(long, default_value = "survey.jsonl")]
    jsonl: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub factor: Vec<String>,
    pub multiplicity: usize,
    pub name: String,
    pub order: Option<u64>,
    pub order_bounds: [u64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub source: String,
    pub name: Option<String>,
    pub ehrhart: Vec<String>,
    pub factors: Vec<FactorSummary>,
    /// Exact order when `combined_order_exact`, otherwise a lower bound.
    pub combined_order: Option<u64>,
    pub combined_order_exact: bool,
    pub wall_time_ms: u64,
    /// `ok`, `unsupported` or `error:<kind>`.
    pub status: String,
}

impl SurveyRecord {
    fn key(&self, by: TallyKey) -> String {
        if self.status != "ok" {
            return self.status.clone();
        }
        match by {
            TallyKey::Order => match (self.combined_order, self.combined_order_exact) {
                (Some(o), true) => o.to_string(),
                (Some(o), false) => format!(">={o}"),
                (None, _) => "unknown".into(),
            },
            TallyKey::Name => {
                let names: Vec<&str> = self
                    .factors
                    .iter()
                    .filter(|f| f.order != Some(1))
                    .map(|f| f.name.as_str())
                    .collect();
                if names.is_empty() {
                    "1".into()
                } else {
                    names.join(" x ")
                }
            }
        }
    }
}

fn process(path: &PathBuf) -> SurveyRecord {
    let start = Instant::now();
    let mut rec = SurveyRecord {
        source: path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned()),
        name: None,
        ehrhart: Vec::new(),
        factors: Vec::new(),
        combined_order: None,
        combined_order_exact: false,
        wall_time_ms: 0,
        status: "ok".into(),
    };
    let result = (|| -> Result<(), Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::input(e.to_string()))?;
        rec.name = LatticePolytope::name_from_json(&text);
        let p = LatticePolytope::from_json(&text)?;
        let e = ehrhart_polynomial(&p)?;
        rec.ehrhart = e.poly.to_coeff_strings();
        let g = match galois_group(&e.poly) {
            Err(GaloisError::UnsupportedDegree(_) | GaloisError::UnsupportedStructure(_)) => {
                rec.status = "unsupported".into();
                return Ok(());
            }
            other => other?,
        };
        rec.factors = g
            .factors
            .iter()
            .map(|f| FactorSummary {
                factor: f.factor.clone(),
                multiplicity: f.multiplicity,
                name: f.name.clone(),
                order: f.order,
                order_bounds: f.order_bounds,
            })
            .collect();
        rec.combined_order = Some(g.combined_order_lower_bound);
        rec.combined_order_exact = g.combined_order_exact.is_some();
        Ok(())
    })();
    if let Err(f) = result {
        rec.status = format!("error:{}", f.kind);
    }
    rec.wall_time_ms = start.elapsed().as_millis() as u64;
    rec
}

/// Numeric keys in numeric order, then the rest lexicographically.
fn compare_keys(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

pub fn tally(records: &[SurveyRecord], by: TallyKey) -> String {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for r in records {
        *counts.entry(r.key(by)).or_default() += 1;
    }
    let mut rows: Vec<(String, usize)> = counts.into_iter().collect();
    rows.sort_by(|a, b| compare_keys(&a.0, &b.0));
    let mut out = String::from("key,count\n");
    for (k, c) in rows {
        out.push_str(&format!("{k},{c}\n"));
    }
    out
}

pub fn cmd_survey(a: &SurveyArgs) -> Result<String, Failure> {
    let entries = std::fs::read_dir(&a.dir)
        .map_err(|e| Failure::input(format!("{}: {e}", a.dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure { code: 4, kind: "internal", message: e.to_string() })?;
    let records: Vec<SurveyRecord> = pool.install(|| files.par_iter().map(process).collect());
    let mut jsonl = String::new();
    for r in &records {
        jsonl.push_str(&serde_json::to_string(r).expect("serializable"));
        jsonl.push('\n');
    }
    std::fs::write(&a.jsonl, jsonl)
        .map_err(|e| Failure::input(format!("{}: {e}", a.jsonl.display())))?;
    Ok(tally(&records, a.tally))
}
