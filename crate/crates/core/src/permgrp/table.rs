//! The bundled table of transitive groups of degree 2–8 and its
//! maximal-subgroup lattice.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GroupError, Perm, PermGroup};

const BUNDLED: &str = include_str!("../../../../data/transitive_2_8.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawMaximal {
    degree: usize,
    index: usize,
    embedding: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawEntry {
    degree: usize,
    index: usize,
    name: String,
    order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    generators: Vec<String>,
    #[serde(default)]
    maximal_subgroups: Vec<RawMaximal>,
}

/// A maximal transitive subgroup, up to conjugacy in the parent: the table
/// entry `index` (same degree) conjugated by `embedding` lies in the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSubgroup {
    pub index: usize,
    pub embedding: Perm,
}

#[derive(Debug)]
pub struct TransitiveTableEntry {
    pub degree: usize,
    pub index: usize,
    pub name: String,
    pub order: u64,
    pub description: Option<String>,
    pub group: PermGroup,
    pub maximal_subgroups: Vec<MaximalSubgroup>,
    cycle_counts: OnceLock<Vec<(Vec<usize>, u64)>>,
}

impl TransitiveTableEntry {
    fn cycle_counts(&self) -> &[(Vec<usize>, u64)] {
        self.cycle_counts
            .get_or_init(|| self.group.cycle_type_counts().into_iter().collect())
    }
}

#[derive(Debug)]
pub struct TransitiveTable {
    entries: Vec<TransitiveTableEntry>,
}

fn malformed(msg: impl Into<String>) -> GroupError {
    GroupError::MalformedTable(msg.into())
}

impl TransitiveTable {
    /// The table shipped with the crate.
    pub fn bundled() -> &'static TransitiveTable {
        static TABLE: OnceLock<TransitiveTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::from_json(BUNDLED).expect("bundled table is valid"))
    }

    pub fn load(path: &Path) -> Result<Self, GroupError> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| malformed(format!("{}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    /// Parses and verifies: each entry's generated order and transitivity,
    /// and each listed embedding by membership of conjugated generators.
    pub fn from_json(s: &str) -> Result<Self, GroupError> {
        let t = Self::parse_unverified(s)?;
        t.verify()?;
        Ok(t)
    }

    fn parse_unverified(s: &str) -> Result<Self, GroupError> {
        let raw: Vec<RawEntry> = serde_json::from_str(s).map_err(|e| malformed(e.to_string()))?;
        let mut entries = Vec::with_capacity(raw.len());
        for r in raw {
            if !(1..=8).contains(&r.degree) {
                return Err(malformed(format!("degree {} out of range", r.degree)));
            }
            let gens = r
                .generators
                .iter()
                .map(|g| Perm::from_cycles(r.degree, g))
                .collect::<Result<Vec<_>, _>>()?;
            let maximal_subgroups = r
                .maximal_subgroups
                .iter()
                .map(|m| {
                    if m.degree != r.degree {
                        return Err(malformed("maximal subgroup of different degree"));
                    }
                    Ok(MaximalSubgroup {
                        index: m.index,
                        embedding: Perm::from_cycles(r.degree, &m.embedding)?,
                    })
                })
                .collect::<Result<Vec<_>, GroupError>>()?;
            entries.push(TransitiveTableEntry {
                degree: r.degree,
                index: r.index,
                name: r.name,
                order: r.order,
                description: r.description,
                group: PermGroup::new(r.degree, &gens)?,
                maximal_subgroups,
                cycle_counts: OnceLock::new(),
            });
        }
        Ok(TransitiveTable { entries })
    }

    fn verify(&self) -> Result<(), GroupError> {
        for e in &self.entries {
            let tag = format!("{}T{}", e.degree, e.index);
            if e.group.order() != e.order {
                return Err(malformed(format!(
                    "{tag}: generators give order {}, expected {}",
                    e.group.order(),
                    e.order
                )));
            }
            if !e.group.is_transitive() {
                return Err(malformed(format!("{tag} is not transitive")));
            }
            for m in &e.maximal_subgroups {
                let h = self
                    .entry(e.degree, m.index)
                    .ok_or_else(|| malformed(format!("{tag}: unknown subgroup {}", m.index)))?;
                if h.order >= e.order || e.order % h.order != 0 {
                    return Err(malformed(format!("{tag}: bad subgroup order")));
                }
                let embeds = h
                    .group
                    .generators()
                    .iter()
                    .all(|g| e.group.contains(&g.conjugate_by(&m.embedding)));
                if !embeds {
                    return Err(malformed(format!(
                        "{tag}: {}T{} does not embed via {}",
                        h.degree, h.index, m.embedding
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[TransitiveTableEntry] {
        &self.entries
    }

    pub fn entry(&self, degree: usize, index: usize) -> Option<&TransitiveTableEntry> {
        self.entries
            .iter()
            .find(|e| e.degree == degree && e.index == index)
    }

    pub fn of_degree(&self, degree: usize) -> impl Iterator<Item = &TransitiveTableEntry> {
        self.entries.iter().filter(move |e| e.degree == degree)
    }

    /// The symmetric group entry of the given degree.
    pub fn symmetric(&self, degree: usize) -> Option<&TransitiveTableEntry> {
        self.of_degree(degree).max_by_key(|e| e.order)
    }

    /// The maximal subgroups of `e`, realized inside `e.group`.
    pub fn maximal_subgroup_groups(
        &self,
        e: &TransitiveTableEntry,
    ) -> Vec<(&TransitiveTableEntry, PermGroup)> {
        e.maximal_subgroups
            .iter()
            .map(|m| {
                let h = self.entry(e.degree, m.index).expect("verified at load");
                (h, h.group.conjugate(&m.embedding))
            })
            .collect()
    }

    /// The table entry conjugate to a transitive `g`, together with `c`
    /// such that `g^c` equals the entry's group.
    pub fn identify(&self, g: &PermGroup) -> Result<(&TransitiveTableEntry, Perm), GroupError> {
        let n = g.degree();
        if !(2..=8).contains(&n) {
            return Err(GroupError::DegreeOutOfRange(n));
        }
        if !g.is_transitive() {
            return Err(GroupError::Intransitive);
        }
        let order = g.order();
        let counts: Vec<(Vec<usize>, u64)> = g.cycle_type_counts().into_iter().collect();
        for e in self.of_degree(n).filter(|e| e.order == order) {
            if e.cycle_counts() != counts.as_slice() {
                continue;
            }
            if let Some(c) = e.group.conjugate_containment(g)? {
                if g.conjugate_containment(&e.group)?.is_some() {
                    return Ok((e, c));
                }
            }
        }
        Err(GroupError::NoMatch)
    }

    /// Serializes entries and their current lattice.
    pub fn to_json(&self) -> String {
        let raw: Vec<RawEntry> = self
            .entries
            .iter()
            .map(|e| RawEntry {
                degree: e.degree,
                index: e.index,
                name: e.name.clone(),
                order: e.order,
                description: e.description.clone(),
                generators: e
                    .group
                    .generators()
                    .iter()
                    .map(Perm::to_cycle_string)
                    .collect(),
                maximal_subgroups: e
                    .maximal_subgroups
                    .iter()
                    .map(|m| RawMaximal {
                        degree: e.degree,
                        index: m.index,
                        embedding: m.embedding.to_cycle_string(),
                    })
                    .collect(),
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&raw).expect("serializable");
        s.push('\n');
        s
    }

    /// Reads a table file without trusting (or checking) its lattice, and
    /// recomputes every maximal-subgroup list.
    pub fn regenerate(s: &str) -> Result<Self, GroupError> {
        let mut t = Self::parse_unverified(s)?;
        for e in t.entries.iter_mut() {
            e.maximal_subgroups.clear();
        }
        t.verify()?;
        let lattice = compute_maximal_subgroups(&t.entries);
        for (e, m) in t.entries.iter_mut().zip(lattice) {
            e.maximal_subgroups = m;
        }
        t.verify()?;
        Ok(t)
    }
}

fn unrank(n: usize, mut r: u64) -> Perm {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = (r % base) as usize;
        r /= base;
    }
    let mut avail: Vec<usize> = (0..n).collect();
    let images: Vec<usize> = digits.iter().map(|&d| avail.remove(d)).collect();
    Perm::from_images(&images).expect("bijection")
}

fn key_of<'a>(elems: impl Iterator<Item = &'a Perm>) -> Vec<u64> {
    let mut k: Vec<u64> = elems.map(Perm::rank).collect();
    k.sort_unstable();
    k
}

struct Conjugates {
    // each class member: (sorted element ranks, conjugator, conjugated generators)
    members: Vec<(Vec<u64>, Perm, Vec<Perm>)>,
    lookup: HashMap<Vec<u64>, usize>,
}

fn conjugate_key(key: &[u64], n: usize, s: &Perm) -> Vec<u64> {
    let mut k: Vec<u64> = key
        .iter()
        .map(|&r| unrank(n, r).conjugate_by(s).rank())
        .collect();
    k.sort_unstable();
    k
}

/// All `S_n`-conjugates of a group, breadth-first from the given generators.
fn all_conjugates(g: &PermGroup) -> Conjugates {
    let n = g.degree();
    let sn = PermGroup::symmetric(n);
    let start = key_of(g.elements().iter());
    let mut members = vec![(start.clone(), Perm::identity(n), g.generators().to_vec())];
    let mut lookup = HashMap::from([(start, 0usize)]);
    let mut i = 0;
    while i < members.len() {
        for s in sn.generators() {
            let k = conjugate_key(&members[i].0, n, s);
            if !lookup.contains_key(&k) {
                let c = &members[i].1 * s;
                let gens = members[i].2.iter().map(|x| x.conjugate_by(s)).collect();
                lookup.insert(k.clone(), members.len());
                members.push((k, c, gens));
            }
        }
        i += 1;
    }
    Conjugates { members, lookup }
}

/// For every entry, its maximal transitive subgroups up to conjugacy in the
/// entry, each placed by an explicit embedding. Works over the concrete
/// `S_n`-conjugates of all entries; maximality is containment-minimality
/// among proper transitive subgroups.
pub fn compute_maximal_subgroups(entries: &[TransitiveTableEntry]) -> Vec<Vec<MaximalSubgroup>> {
    let conj: Vec<Conjugates> = entries
        .par_iter()
        .map(|e| all_conjugates(&e.group))
        .collect();
    entries
        .par_iter()
        .map(|g| {
            let n = g.degree;
            // concrete proper transitive subgroups of g: (entry idx, member idx)
            let subs: Vec<(usize, usize)> = entries
                .iter()
                .enumerate()
                .filter(|(_, k)| k.degree == n && k.order < g.order && g.order % k.order == 0)
                .flat_map(|(ki, _)| {
                    conj[ki]
                        .members
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| m.2.iter().all(|x| g.group.contains(x)))
                        .map(move |(mi, _)| (ki, mi))
                        .collect::<Vec<_>>()
                })
                .collect();
            let pos: HashMap<(usize, usize), usize> =
                subs.iter().enumerate().map(|(i, &s)| (s, i)).collect();

            // classes under conjugation by g
            let mut class = vec![usize::MAX; subs.len()];
            let mut reps = Vec::new();
            for start in 0..subs.len() {
                if class[start] != usize::MAX {
                    continue;
                }
                class[start] = reps.len();
                let mut stack = vec![start];
                let mut min = start;
                while let Some(x) = stack.pop() {
                    let (ki, mi) = subs[x];
                    for s in g.group.generators() {
                        let k = conjugate_key(&conj[ki].members[mi].0, n, s);
                        let mj = conj[ki].lookup[&k];
                        let y = pos[&(ki, mj)];
                        if class[y] == usize::MAX {
                            class[y] = reps.len();
                            min = min.min(y);
                            stack.push(y);
                        }
                    }
                }
                reps.push(min);
            }

            let mut out: Vec<(u64, MaximalSubgroup)> = Vec::new();
            for &r in &reps {
                let (ki, mi) = subs[r];
                let order = entries[ki].order;
                let gens = &conj[ki].members[mi].2;
                let contained_in_bigger = subs.iter().any(|&(kj, mj)| {
                    let o = entries[kj].order;
                    o > order
                        && o % order == 0
                        && gens
                            .iter()
                            .all(|x| conj[kj].members[mj].0.binary_search(&x.rank()).is_ok())
                });
                if !contained_in_bigger {
                    out.push((
                        order,
                        MaximalSubgroup {
                            index: entries[ki].index,
                            embedding: conj[ki].members[mi].1.clone(),
                        },
                    ));
                }
            }
            out.sort_by(|a, b| {
                b.0.cmp(&a.0)
                    .then(a.1.index.cmp(&b.1.index))
                    .then_with(|| a.1.embedding.cmp(&b.1.embedding))
            });
            out.into_iter().map(|(_, m)| m).collect()
        })
        .collect()
}
