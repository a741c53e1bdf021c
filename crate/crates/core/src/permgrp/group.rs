use std::collections::{BTreeMap, HashSet, VecDeque};

use super::{GroupError, Perm};

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    // transversal[β] maps the base point to β
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(n: usize, point: usize, gens: Vec<Perm>) -> Self {
        let mut l = Level {
            point,
            gens,
            orbit: Vec::new(),
            transversal: Vec::new(),
        };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        let mut tr: Vec<Option<Perm>> = vec![None; n];
        tr[self.point] = Some(Perm::identity(n));
        let mut orbit = vec![self.point];
        let mut i = 0;
        while i < orbit.len() {
            let b = orbit[i];
            for s in &self.gens {
                let c = s.image(b);
                if tr[c].is_none() {
                    tr[c] = Some(tr[b].as_ref().unwrap() * s);
                    orbit.push(c);
                }
            }
            i += 1;
        }
        self.orbit = orbit;
        self.transversal = tr;
    }
}

/// A permutation group with a deterministic stabilizer chain. Base points
/// are chosen as smallest moved points, so everything derived from the
/// chain (order of cosets, element enumeration) is reproducible.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: Vec<Level>,
}

impl PermGroup {
    /// Schreier–Sims.
    pub fn new(degree: usize, gens: &[Perm]) -> Result<Self, GroupError> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, g.degree()));
            }
        }
        let gens: Vec<Perm> = gens.to_vec();
        let mut g = PermGroup {
            degree,
            gens: gens.clone(),
            chain: Vec::new(),
        };
        g.schreier_sims(gens.into_iter().filter(|p| !p.is_identity()).collect());
        Ok(g)
    }

    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self, GroupError> {
        let gens = gens
            .iter()
            .map(|s| Perm::from_cycles(degree, s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, &gens)
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, &[]).expect("valid")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let t: Vec<usize> = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
            gens.push(Perm::from_images(&t).unwrap());
        }
        if n >= 3 {
            let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(Perm::from_images(&c).unwrap());
        }
        Self::new(n, &gens).expect("valid")
    }

    pub fn alternating(n: usize) -> Self {
        // 3-cycles (1,2,i)
        let gens: Vec<Perm> = (2..n)
            .map(|i| {
                let mut v: Vec<usize> = (0..n).collect();
                v[0] = 1;
                v[1] = i;
                v[i] = 0;
                Perm::from_images(&v).unwrap()
            })
            .collect();
        Self::new(n, &gens).expect("valid")
    }

    fn schreier_sims(&mut self, strong: Vec<Perm>) {
        let n = self.degree;
        let mut base: Vec<usize> = Vec::new();
        for s in &strong {
            if base.iter().all(|&b| s.image(b) == b) {
                base.push(s.smallest_moved_point().expect("non-identity"));
            }
        }
        let fixes_prefix = |s: &Perm, pts: &[usize]| pts.iter().all(|&b| s.image(b) == b);
        self.chain = (0..base.len())
            .map(|i| {
                let gi = strong
                    .iter()
                    .filter(|s| fixes_prefix(s, &base[..i]))
                    .cloned()
                    .collect();
                Level::new(n, base[i], gi)
            })
            .collect();

        let mut i = self.chain.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut restart = None;
            'check: for &b in &self.chain[iu].orbit.clone() {
                for s in &self.chain[iu].gens.clone() {
                    let ub = self.chain[iu].transversal[b].as_ref().unwrap();
                    let ubs = self.chain[iu].transversal[s.image(b)].as_ref().unwrap();
                    let sg = &(ub * s) * &ubs.inverse();
                    if sg.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(&sg, iu + 1);
                    if !h.is_identity() {
                        if j == self.chain.len() {
                            let pt = h.smallest_moved_point().unwrap();
                            self.chain.push(Level::new(n, pt, Vec::new()));
                        }
                        for l in iu + 1..=j {
                            self.chain[l].gens.push(h.clone());
                            self.chain[l].rebuild(n);
                        }
                        restart = Some(j);
                        break 'check;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Sifts `g` through levels `start..`; returns the residue and the level
    /// where sifting stopped (`chain.len()` if it passed every level).
    fn sift_from(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut g = g.clone();
        for (k, lvl) in self.chain.iter().enumerate().skip(start) {
            let b = g.image(lvl.point);
            match &lvl.transversal[b] {
                None => return (g, k),
                Some(u) => g = &g * &u.inverse(),
            }
        }
        (g, self.chain.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u64 {
        self.chain.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.sift_from(g, 0);
        h.is_identity()
    }

    /// True iff every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            for g in &self.gens {
                let c = g.image(out[i]);
                if !seen[c] {
                    seen[c] = true;
                    out.push(c);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Orbits as sorted point lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = self.orbit(p);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// `H^c = c⁻¹Hc`.
    pub fn conjugate(&self, c: &Perm) -> PermGroup {
        let gens: Vec<Perm> = self.gens.iter().map(|g| g.conjugate_by(c)).collect();
        PermGroup::new(self.degree, &gens).expect("same degree")
    }

    pub fn has_odd_permutation(&self) -> bool {
        self.gens.iter().any(|g| !g.is_even())
    }

    /// All elements, in chain order (identity first).
    pub fn elements(&self) -> Vec<Perm> {
        let mut elems = vec![Perm::identity(self.degree)];
        for lvl in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * lvl.orbit.len());
            for &b in &lvl.orbit {
                let u = lvl.transversal[b].as_ref().unwrap();
                for h in &elems {
                    next.push(h * u);
                }
            }
            elems = next;
        }
        elems
    }

    /// Cycle type ↦ number of elements with that cycle type.
    pub fn cycle_type_counts(&self) -> BTreeMap<Vec<usize>, u64> {
        let mut m = BTreeMap::new();
        for g in self.elements() {
            *m.entry(g.cycle_type()).or_insert(0) += 1;
        }
        m
    }

    pub fn cycle_types(&self) -> HashSet<Vec<usize>> {
        self.elements().iter().map(Perm::cycle_type).collect()
    }

    /// One representative per right coset `Hτ` of `h` in `self`; identity
    /// first, then in breadth-first order over the generators.
    pub fn coset_representatives(&self, h: &PermGroup) -> Result<Vec<Perm>, GroupError> {
        if h.degree != self.degree {
            return Err(GroupError::DegreeMismatch(self.degree, h.degree));
        }
        if !h.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        let index = (self.order() / h.order()) as usize;
        let mut reps = vec![Perm::identity(self.degree)];
        let mut inverses = vec![Perm::identity(self.degree)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(r) = queue.pop_front() {
            if reps.len() == index {
                break;
            }
            for g in &self.gens {
                let cand = &reps[r] * g;
                let known = inverses.iter().any(|inv| h.contains(&(&cand * inv)));
                if !known {
                    inverses.push(cand.inverse());
                    reps.push(cand);
                    queue.push_back(reps.len() - 1);
                }
            }
        }
        debug_assert_eq!(reps.len(), index);
        Ok(reps)
    }

    /// Index of the right coset `Hg` among `reps`.
    pub fn coset_index(h: &PermGroup, reps: &[Perm], g: &Perm) -> Option<usize> {
        reps.iter().position(|r| h.contains(&(g * &r.inverse())))
    }

    /// Some `c` with `H^c ≤ G` (here `self = G`), or `None`.
    pub fn conjugate_containment(&self, h: &PermGroup) -> Result<Option<Perm>, GroupError> {
        if h.degree != self.degree {
            return Err(GroupError::DegreeMismatch(self.degree, h.degree));
        }
        let n = self.degree;
        if h.order() > self.order() || self.order() % h.order() != 0 {
            return Ok(None);
        }
        let hgens: Vec<Perm> = h.gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if hgens.is_empty() {
            return Ok(Some(Perm::identity(n)));
        }
        if h.has_odd_permutation() && !self.has_odd_permutation() {
            return Ok(None);
        }
        // cycle types of H must occur in G
        if self.order() <= 50_000 {
            let gt = self.cycle_types();
            if !hgens.iter().all(|g| gt.contains(&g.cycle_type())) {
                return Ok(None);
            }
        }
        // orbit-length signature: every H-orbit must fit inside one G-orbit
        let g_orbit_of = {
            let mut v = vec![0usize; n];
            for (i, o) in self.orbits().iter().enumerate() {
                for &x in o {
                    v[x] = i;
                }
            }
            v
        };
        let g_orbit_len: Vec<usize> = {
            let orbs = self.orbits();
            (0..n).map(|x| orbs[g_orbit_of[x]].len()).collect()
        };
        let h_orbits = h.orbits();
        let mut hl: Vec<usize> = h_orbits.iter().map(Vec::len).collect();
        let mut gl: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        hl.sort_unstable();
        gl.sort_unstable();
        if hl.iter().max() > gl.iter().max() {
            return Ok(None);
        }
        // assign images in H-orbit order
        let order: Vec<usize> = h_orbits.iter().flatten().copied().collect();
        let mut h_orbit_head = vec![0usize; n];
        for o in &h_orbits {
            for &x in o {
                h_orbit_head[x] = o[0];
            }
        }
        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let found = self.containment_dfs(
            0,
            &order,
            &h_orbit_head,
            &g_orbit_of,
            &g_orbit_len,
            &h_orbits,
            &hgens,
            &mut images,
            &mut used,
        );
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn containment_dfs(
        &self,
        depth: usize,
        order: &[usize],
        head: &[usize],
        g_orbit_of: &[usize],
        g_orbit_len: &[usize],
        h_orbits: &[Vec<usize>],
        hgens: &[Perm],
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Option<Perm> {
        let n = self.degree;
        if depth == n {
            let c = Perm::from_images(images).expect("bijection");
            return hgens
                .iter()
                .all(|g| self.contains(&g.conjugate_by(&c)))
                .then_some(c);
        }
        let x = order[depth];
        let hd = head[x];
        for y in 0..n {
            if used[y] {
                continue;
            }
            if hd != x {
                if g_orbit_of[y] != g_orbit_of[images[hd]] {
                    continue;
                }
            } else {
                let olen = h_orbits.iter().find(|o| o[0] == x).map_or(1, Vec::len);
                if g_orbit_len[y] < olen {
                    continue;
                }
            }
            images[x] = y;
            used[y] = true;
            if let Some(c) = self.containment_dfs(
                depth + 1,
                order,
                head,
                g_orbit_of,
                g_orbit_len,
                h_orbits,
                hgens,
                images,
                used,
            ) {
                return Some(c);
            }
            used[y] = false;
            images[x] = usize::MAX;
        }
        None
    }
}

/// `C₂ ≀ S_k` on `2k` points paired as `(2i-1, 2i)`.
pub fn wreath_c2_sk(k: usize) -> Result<PermGroup, GroupError> {
    if k == 0 {
        return Err(GroupError::DegreeOutOfRange(0));
    }
    let n = 2 * k;
    let mut gens = vec![Perm::from_cycles(n, "(1,2)")?];
    if k >= 2 {
        gens.push(Perm::from_cycles(n, "(1,3)(2,4)")?);
    }
    if k >= 3 {
        let v: Vec<usize> = (0..n).map(|i| (i + 2) % n).collect();
        gens.push(Perm::from_images(&v)?);
    }
    PermGroup::new(n, &gens)
}

/// Lifts permutations of the `k` pairs to block permutations on `2k` points.
pub fn block_action(k: usize, q: &Perm) -> Perm {
    let v: Vec<usize> = (0..2 * k)
        .map(|i| 2 * q.image(i / 2) + i % 2)
        .collect();
    Perm::from_images(&v).expect("bijection")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    fn closure_order(grp: &PermGroup) -> u64 {
        let mut seen = HashSet::new();
        let id = Perm::identity(grp.degree());
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for s in grp.generators() {
                let y = &x * s;
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len() as u64
    }

    #[test]
    fn basic_orders() {
        assert_eq!(g(4, &["(1,2)", "(1,2,3,4)"]).order(), 24);
        assert_eq!(PermGroup::symmetric(6).order(), 720);
        assert_eq!(PermGroup::alternating(5).order(), 60);
        assert_eq!(PermGroup::trivial(3).order(), 1);
        let a4 = PermGroup::alternating(4);
        assert!(!a4.contains(&Perm::from_cycles(4, "(1,2)").unwrap()));
        assert!(a4.contains(&Perm::from_cycles(4, "(1,2)(3,4)").unwrap()));
        assert!(!g(4, &["(1,2)"]).is_transitive());
        assert!(g(4, &["(1,2,3,4)"]).is_transitive());
    }

    #[test]
    fn chain_matches_closure() {
        for gens in [
            vec!["(1,2,3,4,5,6,7,8)", "(1,3)(5,7)"],
            vec!["(1,2,3)(4,5,6)", "(1,4)(2,5)(3,6)", "(1,2)"],
            vec!["(1,5)(2,6)", "(1,3)(2,4)(5,7)(6,8)", "(1,2)(3,4)"],
            vec!["(2,3,5,4)", "(1,2,3,4,5)"],
        ] {
            let grp = g(8, &gens);
            assert_eq!(grp.order(), closure_order(&grp), "{gens:?}");
            assert_eq!(grp.elements().len() as u64, grp.order());
        }
    }

    #[test]
    fn wreath_orders() {
        let mut f = 1u64;
        for k in 1..=8 {
            f *= k as u64;
            assert_eq!(wreath_c2_sk(k).unwrap().order(), (1u64 << k) * f);
        }
        assert_eq!(wreath_c2_sk(8).unwrap().order(), 10_321_920);
    }

    #[test]
    fn cosets() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.coset_representatives(&PermGroup::alternating(4)).unwrap().len(), 2);
        let s3 = PermGroup::symmetric(3);
        let h = g(3, &["(1,2)"]);
        let reps = s3.coset_representatives(&h).unwrap();
        assert_eq!(reps.len(), 3);
        assert!(reps[0].is_identity());
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(!h.contains(&(&reps[i] * &reps[j].inverse())));
                }
            }
        }
        assert!(matches!(
            h.coset_representatives(&s3),
            Err(GroupError::NotASubgroup)
        ));
        // C2 wr S2 over <(1,2)(3,4)> ⋊ S2
        let w = wreath_c2_sk(2).unwrap();
        let sub = g(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert_eq!(w.coset_representatives(&sub).unwrap().len(), 2);
    }

    #[test]
    fn containment() {
        let a4 = PermGroup::alternating(4);
        let v4 = g(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let c = a4.conjugate_containment(&v4).unwrap().unwrap();
        assert!(v4.conjugate(&c).is_subgroup_of(&a4));
        assert!(a4.conjugate_containment(&g(4, &["(1,2)"])).unwrap().is_none());
        let c4 = g(4, &["(1,2,3,4)"]);
        assert!(c4.conjugate_containment(&PermGroup::symmetric(3)).is_err());
        // D4 contains a conjugate of <(1,2)(3,4)>, placed as needed
        let d4 = g(4, &["(1,2,3,4)", "(1,3)"]);
        let k = g(4, &["(1,2)"]);
        let c = d4.conjugate_containment(&k).unwrap().unwrap();
        assert!(k.conjugate(&c).is_subgroup_of(&d4));
    }

    #[test]
    fn block_action_is_in_wreath() {
        let w = wreath_c2_sk(4).unwrap();
        let q = Perm::from_cycles(4, "(1,3,2)").unwrap();
        let b = block_action(4, &q);
        assert!(w.contains(&b));
        assert_eq!(b.to_cycle_string(), "(1,5,3)(2,6,4)");
    }
}
