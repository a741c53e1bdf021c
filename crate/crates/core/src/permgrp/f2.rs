//! Submodules of the permutation module `F₂^k`, vectors stored as bitmasks
//! (bit `i` is coordinate `i`).

use std::collections::BTreeSet;

use super::{GroupError, Perm};

/// A subspace of `F₂^k` in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Subspace {
    pub k: usize,
    pub basis: Vec<u32>,
}

impl F2Subspace {
    pub fn span(k: usize, vecs: impl IntoIterator<Item = u32>) -> Self {
        let mut rows: Vec<u32> = Vec::new();
        for v in vecs {
            let mut v = v;
            for &r in &rows {
                v = v.min(v ^ r);
            }
            if v != 0 {
                // keep reduced: clear the new pivot from older rows
                let pivot = 31 - v.leading_zeros();
                for r in rows.iter_mut() {
                    if *r >> pivot & 1 == 1 {
                        *r ^= v;
                    }
                }
                rows.push(v);
            }
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));
        F2Subspace { k, basis: rows }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: u32) -> bool {
        let mut v = v;
        for &r in &self.basis {
            v = v.min(v ^ r);
        }
        v == 0
    }

    pub fn sum(&self, o: &Self) -> Self {
        Self::span(self.k, self.basis.iter().chain(&o.basis).copied())
    }

    /// Orthogonal complement for the standard dot product.
    pub fn perp(&self) -> Self {
        let k = self.k;
        Self::span(
            k,
            (1u32..1 << k).filter(|&v| self.basis.iter().all(|&b| (b & v).count_ones() % 2 == 0)),
        )
    }

    pub fn elements(&self) -> Vec<u32> {
        let d = self.dim();
        (0u32..1 << d)
            .map(|m| {
                (0..d)
                    .filter(|i| m >> i & 1 == 1)
                    .fold(0, |acc, i| acc ^ self.basis[i])
            })
            .collect()
    }
}

/// Image of a bitmask under a permutation of coordinates.
pub fn permute_bits(v: u32, q: &Perm) -> u32 {
    (0..q.degree())
        .filter(|&i| v >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << q.image(i))
}

/// All `Q`-invariant subspaces of `F₂^k`, sorted by dimension then basis.
/// Built as sums of cyclic submodules, so the count grows quickly for small
/// `Q`; intended for transitive `Q`.
pub fn invariant_subspaces(k: usize, gens: &[Perm]) -> Result<Vec<F2Subspace>, GroupError> {
    if k > 8 {
        return Err(GroupError::DegreeOutOfRange(k));
    }
    for g in gens {
        if g.degree() != k {
            return Err(GroupError::DegreeMismatch(k, g.degree()));
        }
    }
    let cyclic = |v: u32| {
        let mut orbit = vec![v];
        let mut i = 0;
        while i < orbit.len() {
            for g in gens {
                let w = permute_bits(orbit[i], g);
                if !orbit.contains(&w) {
                    orbit.push(w);
                }
            }
            i += 1;
        }
        F2Subspace::span(k, orbit)
    };
    let mut all: BTreeSet<F2Subspace> = BTreeSet::new();
    all.insert(F2Subspace::span(k, []));
    let gens_cyclic: BTreeSet<F2Subspace> = (1u32..1 << k).map(cyclic).collect();
    all.extend(gens_cyclic.iter().cloned());
    let mut frontier: Vec<F2Subspace> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &gens_cyclic {
                let t = s.sum(c);
                if !all.contains(&t) {
                    all.insert(t.clone());
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<F2Subspace> = all.into_iter().collect();
    out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.basis.cmp(&b.basis)));
    Ok(out)
}
