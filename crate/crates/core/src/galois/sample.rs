//! Frobenius cycle types from factorizations modulo primes. Every sampled
//! type occurs in the Galois group; this is a consistency check only.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::permgrp::{Perm, PermGroup};
use crate::polyalg::modp::{is_prime, FpPoly};
use crate::polyalg::ZPoly;

/// Factor-degree multisets (descending) of `f` modulo the first
/// `prime_count` primes not dividing the leading coefficient and keeping `f`
/// squarefree, with their frequencies.
pub fn sample_cycle_types(f: &ZPoly, prime_count: usize) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    let lc = f.leading_coeff();
    let mut used = 0;
    let mut p = 2u64;
    while used < prime_count {
        if is_prime(p) && !lc.is_multiple_of(&BigInt::from(p)) {
            let fp = FpPoly::from_zpoly(f, p);
            if fp.degree() == f.degree() && fp.is_squarefree() {
                *out.entry(fp.monic().factor_degrees()).or_insert(0) += 1;
                used += 1;
            }
        }
        p += 1;
    }
    out
}

/// Whether `g` has an element of each listed cycle type. Groups up to a
/// million elements are enumerated; larger ones are sampled by random
/// products, so `false` there means "not found".
pub fn group_has_cycle_types<'a>(g: &PermGroup, types: impl IntoIterator<Item = &'a Vec<usize>>) -> bool {
    let mut wanted: HashSet<Vec<usize>> = types.into_iter().cloned().collect();
    if g.order() <= 1_000_000 {
        let have = g.cycle_types();
        return wanted.iter().all(|t| have.contains(t));
    }
    let gens = g.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut x = Perm::identity(g.degree());
    for _ in 0..500_000 {
        x = &x * &gens[rng.gen_range(0..gens.len())];
        wanted.remove(&x.cycle_type());
        if wanted.is_empty() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_sees_both_types() {
        let s = sample_cycle_types(&ZPoly::from_ints(&[3, 1, 1]), 50);
        assert_eq!(s.values().sum::<usize>(), 50);
        assert!(s.contains_key(&vec![1, 1]) && s.contains_key(&vec![2]));
    }

    #[test]
    fn linear_is_trivial() {
        let s = sample_cycle_types(&ZPoly::from_ints(&[1, 2]), 20);
        assert_eq!(s.keys().collect::<Vec<_>>(), vec![&vec![1]]);
    }
}
