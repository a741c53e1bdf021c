//! Full-dimensional lattice polytopes given by vertices, with facets,
//! lattice-point counting of dilates, polarity and the reflexive / smooth
//! predicates.

mod count;
mod facets;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub(crate) use facets::det;
use facets::{dot, enumerate_facets, rank};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("no vertices")]
    Empty,
    #[error("vertices have inconsistent dimensions")]
    DimensionMismatch,
    #[error("vertices do not span a full-dimensional polytope")]
    NotFullDimensional,
    #[error("dimension {0} too small for this family")]
    DimensionTooSmall(usize),
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("not reflexive: facet {0} has right-hand side other than 1")]
    NotReflexive(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

/// The half-space `normal · x ≤ rhs`, normal primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub rhs: i64,
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·x ≤ {}", self.normal, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    vertices: Vec<Vec<i64>>,
    facets: Vec<HalfSpace>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeFile {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    dim: Option<usize>,
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    /// Convex hull of the given points. Duplicates and points that are not
    /// vertices of the hull are dropped; vertices are sorted.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self, PolytopeError> {
        let pts: BTreeSet<Vec<i64>> = points.into_iter().collect();
        let pts: Vec<Vec<i64>> = pts.into_iter().collect();
        let d = pts.first().ok_or(PolytopeError::Empty)?.len();
        if d == 0 || pts.iter().any(|p| p.len() != d) {
            return Err(PolytopeError::DimensionMismatch);
        }
        let diffs: Vec<Vec<i64>> = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
            .collect();
        if rank(&diffs) < d {
            return Err(PolytopeError::NotFullDimensional);
        }
        let facets = enumerate_facets(&pts)?;
        // a point is a vertex iff the normals of the facets through it span ℚ^d
        let vertices = pts
            .into_iter()
            .filter(|v| {
                let active: Vec<Vec<i64>> = facets
                    .iter()
                    .filter(|h| dot(&h.normal, v) == h.rhs)
                    .map(|h| h.normal.clone())
                    .collect();
                rank(&active) == d
            })
            .collect();
        Ok(LatticePolytope { vertices, facets })
    }

    /// Trusted constructor for families whose facets are known in closed
    /// form.
    fn from_parts(mut vertices: Vec<Vec<i64>>, mut facets: Vec<HalfSpace>) -> Self {
        vertices.sort();
        facets.sort();
        LatticePolytope { vertices, facets }
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    /// `[-1,1]^d`.
    pub fn cube(d: usize) -> Result<Self, PolytopeError> {
        if d == 0 {
            return Err(PolytopeError::DimensionTooSmall(0));
        }
        if d > 20 {
            return Err(PolytopeError::Overflow);
        }
        let vertices = (0..1u32 << d)
            .map(|m| (0..d).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect())
            .collect();
        Ok(Self::from_parts(vertices, signed_units(d)))
    }

    /// `conv{e₁,…,e_d, −e₁−…−e_d}`.
    pub fn fano_simplex(d: usize) -> Result<Self, PolytopeError> {
        if d == 0 {
            return Err(PolytopeError::DimensionTooSmall(0));
        }
        let mut pts: Vec<Vec<i64>> = (0..d).map(|i| unit(d, i, 1)).collect();
        pts.push(vec![-1; d]);
        Self::new(pts)
    }

    /// `conv{±e₁,…,±e_d, ±𝟙}`.
    pub fn del_pezzo(d: usize) -> Result<Self, PolytopeError> {
        if d < 2 {
            return Err(PolytopeError::DimensionTooSmall(d));
        }
        let mut pts = Vec::new();
        for i in 0..d {
            pts.push(unit(d, i, 1));
            pts.push(unit(d, i, -1));
        }
        pts.push(vec![1; d]);
        pts.push(vec![-1; d]);
        Self::new(pts)
    }

    /// `conv(P × {0} ∪ {0} × Q)`.
    pub fn free_sum(p: &Self, q: &Self) -> Result<Self, PolytopeError> {
        if !p.origin_interior() || !q.origin_interior() {
            return Err(PolytopeError::OriginNotInterior);
        }
        let (dp, dq) = (p.dim(), q.dim());
        let mut pts = Vec::new();
        for v in &p.vertices {
            let mut w = v.clone();
            w.extend(std::iter::repeat(0).take(dq));
            pts.push(w);
        }
        for v in &q.vertices {
            let mut w = vec![0; dp];
            w.extend(v);
            pts.push(w);
        }
        Self::new(pts)
    }

    /// `k·P`.
    pub fn dilate(&self, k: i64) -> Result<Self, PolytopeError> {
        if k <= 0 {
            return Err(PolytopeError::NotFullDimensional);
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        let facets = self
            .facets
            .iter()
            .map(|h| HalfSpace { normal: h.normal.clone(), rhs: h.rhs * k })
            .collect();
        Ok(Self::from_parts(vertices, facets))
    }

    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|h| h.rhs > 0)
    }

    /// Whether every facet reads `a·x ≤ 1` with primitive `a`.
    pub fn is_reflexive(&self) -> Result<bool, PolytopeError> {
        if !self.origin_interior() {
            return Err(PolytopeError::OriginNotInterior);
        }
        Ok(self.facets.iter().all(|h| h.rhs == 1))
    }

    /// The polar `{y : ⟨x,y⟩ ≤ 1 ∀x ∈ P}` of a reflexive polytope. Its
    /// vertices are the facet normals of `P` and its facets are the vertices
    /// of `P`.
    pub fn polar(&self) -> Result<Self, PolytopeError> {
        if !self.origin_interior() {
            return Err(PolytopeError::OriginNotInterior);
        }
        if let Some(h) = self.facets.iter().find(|h| h.rhs != 1) {
            return Err(PolytopeError::NotReflexive(h.to_string()));
        }
        let vertices = self.facets.iter().map(|h| h.normal.clone()).collect();
        let facets = self
            .vertices
            .iter()
            .map(|v| HalfSpace { normal: v.clone(), rhs: 1 })
            .collect();
        Ok(Self::from_parts(vertices, facets))
    }

    /// Smoothness of the normal fan: every vertex lies on exactly `d`
    /// facets whose primitive normals form a basis of `ℤ^d`.
    pub fn is_smooth(&self) -> Result<bool, PolytopeError> {
        let d = self.dim();
        for v in &self.vertices {
            let active: Vec<Vec<i128>> = self
                .facets
                .iter()
                .filter(|h| dot(&h.normal, v) == h.rhs)
                .map(|h| h.normal.iter().map(|&x| x as i128).collect())
                .collect();
            if active.len() != d || det(active)?.abs() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let d = self.dim();
        let lo = (0..d)
            .map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap())
            .collect();
        let hi = (0..d)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap())
            .collect();
        (lo, hi)
    }

    /// `|tP ∩ ℤ^d|`.
    pub fn lattice_point_count(&self, t: u64) -> u64 {
        if t == 0 {
            return 1;
        }
        let (lo, hi) = self.bounding_box();
        count::count_points(&self.facets, &lo, &hi, t as i64, 0)
    }

    /// Lattice points in the interior of `tP`.
    pub fn interior_point_count(&self, t: u64) -> u64 {
        if t == 0 {
            return 0;
        }
        let (lo, hi) = self.bounding_box();
        count::count_points(&self.facets, &lo, &hi, t as i64, -1)
    }

    pub fn from_json(s: &str) -> Result<Self, PolytopeError> {
        let f: PolytopeFile =
            serde_json::from_str(s).map_err(|e| PolytopeError::Parse(e.to_string()))?;
        let p = Self::new(f.vertices)?;
        if let Some(d) = f.dim {
            if d != p.dim() {
                return Err(PolytopeError::Parse(format!(
                    "declared dim {d} but vertices have dimension {}",
                    p.dim()
                )));
            }
        }
        Ok(p)
    }

    pub fn to_json(&self, name: &str) -> String {
        serde_json::to_string(&PolytopeFile {
            name: Some(name.to_string()),
            dim: Some(self.dim()),
            vertices: self.vertices.clone(),
        })
        .expect("serializable")
    }

    /// Reads the optional `name` field of a polytope file.
    pub fn name_from_json(s: &str) -> Option<String> {
        serde_json::from_str::<PolytopeFile>(s).ok()?.name
    }

    /// Builds a polytope from a spec string: `cube:d`, `fano-simplex:d`,
    /// `del-pezzo:d`, `polar:<spec>`, `free-sum:<spec>,<spec>[,…]`.
    pub fn builtin(spec: &str) -> Result<Self, PolytopeError> {
        let spec = spec.trim();
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| PolytopeError::Parse(format!("expected kind:arg, got {spec:?}")))?;
        let num = || {
            arg.trim()
                .parse::<usize>()
                .map_err(|_| PolytopeError::Parse(format!("bad dimension {arg:?}")))
        };
        match kind.trim() {
            "cube" => Self::cube(num()?),
            "fano-simplex" => Self::fano_simplex(num()?),
            "del-pezzo" => Self::del_pezzo(num()?),
            "polar" => Self::builtin(arg)?.polar(),
            "free-sum" => {
                let parts = split_summands(arg)?;
                let mut acc = Self::builtin(&parts[0])?;
                for p in &parts[1..] {
                    acc = Self::free_sum(&acc, &Self::builtin(p)?)?;
                }
                Ok(acc)
            }
            other => Err(PolytopeError::Parse(format!("unknown polytope family {other:?}"))),
        }
    }
}

/// Splits `a,b,c` where each summand is itself a builtin spec; commas that
/// belong to a nested `free-sum` are kept by trying the shortest prefix that
/// parses.
fn split_summands(arg: &str) -> Result<Vec<String>, PolytopeError> {
    let pieces: Vec<&str> = arg.split(',').collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < pieces.len() {
        let mut j = i + 1;
        loop {
            let cand = pieces[i..j].join(",");
            if LatticePolytope::builtin(&cand).is_ok() {
                out.push(cand);
                break;
            }
            if j == pieces.len() {
                return Err(PolytopeError::Parse(format!("cannot parse summand {cand:?}")));
            }
            j += 1;
        }
        i = j;
    }
    if out.len() < 2 {
        return Err(PolytopeError::Parse("free-sum needs at least two summands".into()));
    }
    Ok(out)
}

fn unit(d: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = s;
    v
}

fn signed_units(d: usize) -> Vec<HalfSpace> {
    (0..d)
        .flat_map(|i| [1, -1].map(|s| HalfSpace { normal: unit(d, i, s), rhs: 1 }))
        .collect()
}
