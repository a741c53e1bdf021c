//! Lattice points of dilates by a pruned box scan. The first coordinates
//! are enumerated; the last one is solved as an interval.

use num_integer::Integer;
use rayon::prelude::*;

use super::HalfSpace;

struct Scan<'a> {
    facets: &'a [HalfSpace],
    lo: Vec<i64>,
    hi: Vec<i64>,
    // min_rest[l][f]: minimum of Σ_{i>l} a_i x_i over the box
    min_rest: Vec<Vec<i64>>,
}

impl<'a> Scan<'a> {
    fn new(facets: &'a [HalfSpace], lo: Vec<i64>, hi: Vec<i64>) -> Self {
        let d = lo.len();
        let mut min_rest = vec![vec![0i64; facets.len()]; d];
        for l in (0..d.saturating_sub(1)).rev() {
            for (f, h) in facets.iter().enumerate() {
                let a = h.normal[l + 1];
                let m = (a * lo[l + 1]).min(a * hi[l + 1]);
                min_rest[l][f] = m + if l + 1 < d { min_rest[l + 1][f] } else { 0 };
            }
        }
        Scan { facets, lo, hi, min_rest }
    }

    /// Count with `rem[f] = rhs_f − Σ_{i<level} a_i x_i`.
    fn count(&self, level: usize, rem: &mut [i64]) -> u64 {
        let d = self.lo.len();
        if level == d - 1 {
            let (mut lo, mut hi) = (self.lo[level], self.hi[level]);
            for (f, h) in self.facets.iter().enumerate() {
                let a = h.normal[level];
                let r = rem[f];
                if a > 0 {
                    hi = hi.min(Integer::div_floor(&r, &a));
                } else if a < 0 {
                    lo = lo.max(Integer::div_ceil(&r, &a));
                } else if r < 0 {
                    return 0;
                }
                if lo > hi {
                    return 0;
                }
            }
            return (hi - lo + 1) as u64;
        }
        let mut total = 0;
        for x in self.lo[level]..=self.hi[level] {
            let mut ok = true;
            for (f, h) in self.facets.iter().enumerate() {
                rem[f] -= h.normal[level] * x;
                if rem[f] < self.min_rest[level][f] {
                    ok = false;
                }
            }
            if ok {
                total += self.count(level + 1, rem);
            }
            for (f, h) in self.facets.iter().enumerate() {
                rem[f] += h.normal[level] * x;
            }
        }
        total
    }
}

/// Number of `x ∈ ℤ^d` with `a·x ≤ t·b + shift` for every facet, inside the
/// box `[t·lo, t·hi]`.
pub(crate) fn count_points(
    facets: &[HalfSpace],
    lo: &[i64],
    hi: &[i64],
    t: i64,
    shift: i64,
) -> u64 {
    let d = lo.len();
    let lo: Vec<i64> = lo.iter().map(|x| x * t).collect();
    let hi: Vec<i64> = hi.iter().map(|x| x * t).collect();
    let rhs: Vec<i64> = facets.iter().map(|h| h.rhs * t + shift).collect();
    let scan = Scan::new(facets, lo, hi);
    if d == 1 {
        return scan.count(0, &mut rhs.clone());
    }
    (scan.lo[0]..=scan.hi[0])
        .into_par_iter()
        .map(|x| {
            let mut rem = rhs.clone();
            for (f, h) in facets.iter().enumerate() {
                rem[f] -= h.normal[0] * x;
                if rem[f] < scan.min_rest[0][f] {
                    return 0;
                }
            }
            scan.count(1, &mut rem)
        })
        .sum()
}
