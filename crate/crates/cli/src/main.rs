//! `ehrlab`: Ehrhart polynomials and Galois groups from the command line.

mod survey;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ehrlab_core::ehrhart::{ehrhart_polynomial, fano_simplex_closed_form, verify_ehrhart};
use ehrlab_core::galois::{galois_group_with, GaloisError, GaloisOptions, GaloisResult};
use ehrlab_core::permgrp::{GroupError, TransitiveTable};
use ehrlab_core::polyalg::{parse_poly, PolyError, QPoly};
use ehrlab_core::polytope::{LatticePolytope, PolytopeError};

const BUILTIN_HELP: &str = "Builtin polytopes are written kind:arg. Kinds: cube:d, fano-simplex:d, \
del-pezzo:d (d even ≥ 2 or odd ≥ 3), polar:<spec>, free-sum:<spec>,<spec>[,…]. \
Example: free-sum:del-pezzo:2,del-pezzo:4";

#[derive(Parser)]
#[command(name = "ehrlab", version, about = "Ehrhart polynomials of lattice polytopes and Galois groups of rational polynomials", after_help = BUILTIN_HELP)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ehrhart polynomial of a polytope, with consistency checks.
    Ehrhart(PolytopeInput),
    /// Galois group of a polynomial or of a polytope's Ehrhart polynomial.
    Galois(GaloisArgs),
    /// Ehrhart polynomials and Galois groups of every polytope file in a directory.
    Survey(survey::SurveyArgs),
    /// Recompute the maximal-subgroup lattice of the transitive table.
    #[command(hide = true)]
    GenTable {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Exit with status 4 if the recomputed table differs from the input.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PolytopeInput {
    /// Builtin polytope, e.g. cube:3 or free-sum:del-pezzo:2,del-pezzo:4.
    #[arg(long)]
    builtin: Option<String>,
    /// Polytope JSON file: {"name": …, "dim": …, "vertices": [[…], …]}.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceLevel {
    Summary,
    Full,
}

#[derive(Args)]
struct GaloisArgs {
    /// Coefficients "c0,c1,…,cn" (constant first) or a polynomial such as "5t^4+10t^3+24".
    #[arg(long, group = "source")]
    poly: Option<String>,
    #[arg(long, group = "source")]
    builtin: Option<String>,
    #[arg(long, group = "source")]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "summary")]
    trace: TraceLevel,
    /// Filter cosets by complex conjugation first.
    #[arg(long)]
    short_cosets: bool,
    /// Seed for the random part of the Tschirnhaus schedule.
    #[arg(long)]
    seed: Option<u64>,
}

/// Failure with its exit status: 2 input, 3 computation, 4 internal.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "input", message: message.into() }
    }
}

impl From<PolytopeError> for Failure {
    fn from(e: PolytopeError) -> Self {
        match e {
            PolytopeError::Overflow => Failure { code: 3, kind: "overflow", message: e.to_string() },
            _ => Failure { code: 2, kind: "polytope", message: e.to_string() },
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Internal(_) => Failure { code: 4, kind: "internal", message: e.to_string() },
            _ => Failure { code: 2, kind: "polynomial", message: e.to_string() },
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure { code: 4, kind: "table", message: e.to_string() }
    }
}

impl From<GaloisError> for Failure {
    fn from(e: GaloisError) -> Self {
        let message = e.to_string();
        let (code, kind) = match e {
            GaloisError::Constant => (2, "constant"),
            GaloisError::Poly(p) => return p.into(),
            GaloisError::UnsupportedDegree(_) | GaloisError::UnsupportedStructure(_) => (3, "unsupported"),
            GaloisError::PrecisionCeiling(_) => (3, "precision-ceiling"),
            GaloisError::TschirnhausExhausted => (3, "tschirnhaus-exhausted"),
            GaloisError::SearchBudgetExhausted(_) => (3, "search-budget-exhausted"),
            GaloisError::NotProperSubgroup
            | GaloisError::TableInconsistency(_)
            | GaloisError::Group(_)
            | GaloisError::Internal(_) => (4, "internal"),
        };
        Failure { code, kind, message }
    }
}

/// Pretty JSON with sorted keys, so re-parsing and printing is the identity.
fn to_json<T: Serialize>(v: &T) -> String {
    let value: Value = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_polytope(builtin: Option<&str>, file: Option<&Path>) -> Result<(String, LatticePolytope), Failure> {
    match (builtin, file) {
        (Some(b), _) => Ok((b.to_string(), LatticePolytope::builtin(b)?)),
        (None, Some(f)) => {
            let text = read_file(f)?;
            let p = LatticePolytope::from_json(&text)?;
            let name = LatticePolytope::name_from_json(&text).unwrap_or_else(|| f.display().to_string());
            Ok((name, p))
        }
        (None, None) => Err(Failure::input("no polytope given")),
    }
}

fn cmd_ehrhart(input: &PolytopeInput) -> Result<String, Failure> {
    let (source, p) = load_polytope(input.builtin.as_deref(), input.file.as_deref())?;
    let mut e = ehrhart_polynomial(&p)?;
    e.source = source.clone();
    let report = verify_ehrhart(&e, &p);
    let out = json!({
        "source": source,
        "dim": p.dim(),
        "vertices": p.vertices().len(),
        "facets": p.facets().len(),
        "coefficients": e.poly.to_coeff_strings(),
        "counts": e.counts,
        "checks": report.checks,
        "all_checks_passed": report.all_passed(),
    });
    if !report.all_passed() {
        eprint!("{}", to_json(&out));
        return Err(Failure { code: 4, kind: "internal", message: "Ehrhart checks failed".into() });
    }
    Ok(to_json(&out))
}

/// The polynomial for `--builtin`: Fano simplices use the closed form, every
/// other polytope is counted.
fn builtin_polynomial(spec: &str) -> Result<QPoly, Failure> {
    if let Some(("fano-simplex", d)) = spec.trim().split_once(':') {
        let d: usize = d.trim().parse().map_err(|_| Failure::input(format!("bad dimension {d:?}")))?;
        if d == 0 {
            return Err(PolytopeError::DimensionTooSmall(0).into());
        }
        return Ok(fano_simplex_closed_form(d));
    }
    let p = LatticePolytope::builtin(spec)?;
    Ok(ehrhart_polynomial(&p)?.poly)
}

fn trace_summary(r: &GaloisResult) -> Value {
    let factors: Vec<Value> = r
        .factors
        .iter()
        .map(|f| {
            let accepted: Vec<Value> = f
                .certificate
                .steps
                .iter()
                .filter(|s| s.outcome.accepted.is_some())
                .map(|s| json!({"group": s.group, "subgroup": s.subgroup, "value": s.outcome.value}))
                .collect();
            json!({
                "factor": f.factor,
                "steps": f.certificate.steps.len(),
                "accepted": accepted,
                "root_centers": f.certificate.root_centers,
            })
        })
        .collect();
    Value::Array(factors)
}

fn galois_json(r: &GaloisResult, ehrhart: Option<&QPoly>, level: TraceLevel) -> Value {
    let factors: Vec<Value> = r
        .factors
        .iter()
        .map(|f| {
            let mut v = json!({
                "factor": f.factor,
                "degree": f.degree,
                "multiplicity": f.multiplicity,
                "name": f.name,
                "order": f.order,
                "order_bounds": f.order_bounds,
                "method": f.method,
                "transitive_id": f.transitive_id,
                "generators": serde_json::to_value(f).expect("serializable")["generators"].clone(),
            });
            if let Some(w) = &f.wreath {
                v["wreath"] = serde_json::to_value(w).expect("serializable");
            }
            if matches!(level, TraceLevel::Full) {
                v["certificate"] = serde_json::to_value(&f.certificate).expect("serializable");
            }
            v
        })
        .collect();
    let mut out = json!({
        "input": r.input,
        "factors": factors,
        "combined_order": {
            "value": r.combined_order_lower_bound,
            "exact": r.combined_order_exact.is_some(),
        },
        "notes": r.notes,
    });
    if let Some(e) = ehrhart {
        out["ehrhart"] = json!(e.to_coeff_strings());
    }
    if matches!(level, TraceLevel::Summary) {
        out["trace"] = trace_summary(r);
    }
    out
}


fn cmd_galois(a: &GaloisArgs) -> Result<String, Failure> {
    let (poly, from_polytope) = match (&a.poly, &a.builtin, &a.file) {
        (Some(p), _, _) => (parse_poly(p)?, false),
        (_, Some(b), _) => (builtin_polynomial(b)?, true),
        (_, _, Some(f)) => {
            let (_, p) = load_polytope(None, Some(f))?;
            (ehrhart_polynomial(&p)?.poly, true)
        }
        _ => return Err(Failure::input("one of --poly, --builtin, --file is required")),
    };
    let mut opts = GaloisOptions { short_cosets: a.short_cosets, ..Default::default() };
    if let Some(s) = a.seed {
        opts.seed = s;
    }
    let r = galois_group_with(&poly, &opts)?;
    Ok(to_json(&galois_json(&r, from_polytope.then_some(&poly), a.trace)))
}

fn cmd_gen_table(input: Option<&Path>, output: Option<&Path>, check: bool) -> Result<String, Failure> {
    let text = match input {
        Some(p) => read_file(p)?,
        None => TransitiveTable::bundled().to_json(),
    };
    let fresh = TransitiveTable::regenerate(&text)?.to_json();
    if check && fresh != text {
        return Err(Failure { code: 4, kind: "table", message: "recomputed lattice differs from the input".into() });
    }
    match output {
        Some(p) => {
            std::fs::write(p, &fresh).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(fresh),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.cmd {
        Command::Ehrhart(i) => cmd_ehrhart(i),
        Command::Galois(a) => cmd_galois(a),
        Command::Survey(a) => survey::cmd_survey(a),
        Command::GenTable { input, output, check } => {
            cmd_gen_table(input.as_deref(), output.as_deref(), *check)
        }
    };
    match result {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error ({}): {}", f.kind, f.message);
            ExitCode::from(f.code)
        }
    }
}
