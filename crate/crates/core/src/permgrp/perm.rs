use std::fmt;
use std::ops::Mul;

use super::GroupError;

/// A permutation of `{0, …, n-1}` (printed 1-based in cycle notation).
///
/// Products follow the left-to-right convention: `a * b` applies `a` first,
/// so `i^(a*b) = (i^a)^b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 256, "degree above 256 unsupported");
        Perm {
            images: (0..n).map(|i| i as u8).collect(),
        }
    }

    /// From 0-based images; rejects non-bijections.
    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let n = images.len();
        if n > 256 {
            return Err(GroupError::Parse("degree above 256 unsupported".into()));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GroupError::Parse(format!("not a bijection: {images:?}")));
            }
        }
        Ok(Perm {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)` or `()`.
    /// Spaces are allowed as separators inside cycles.
    pub fn from_cycles(n: usize, s: &str) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        let bad = |m: &str| GroupError::Parse(format!("{m} in cycle string {s:?}"));
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('"))?;
            let body = &body[..body_end - 1];
            let pts = body
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<Vec<_>, _>>()?;
            for &p in &pts {
                if p == 0 || p > n {
                    return Err(bad("point out of range"));
                }
            }
            // compose this cycle after what we have so far
            let mut cyc: Vec<usize> = (0..n).collect();
            for (i, &p) in pts.iter().enumerate() {
                cyc[p - 1] = pts[(i + 1) % pts.len()] - 1;
            }
            images = images.iter().map(|&x| cyc[x]).collect();
            rest = rest[body_end + 1..].trim_start();
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    /// `c⁻¹ · self · c`, mapping `i^c ↦ (i^self)^c`.
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        let mut out = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[c.images[i] as usize] = c.images[x as usize];
        }
        Perm { images: out }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.image(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths including fixed points, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    /// Lehmer rank in `0..n!`.
    pub fn rank(&self) -> u64 {
        let n = self.degree();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&x| x < self.images[i])
                .count() as u64;
            rank = rank * (n - i) as u64 + smaller;
        }
        rank
    }

    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&parts.join(","));
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, o: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&x| o.images[x as usize]).collect(),
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self.to_cycle_string())
    }
}
