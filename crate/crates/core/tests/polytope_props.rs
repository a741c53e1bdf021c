use ehrlab_core::ehrhart::{ehrhart_polynomial, fano_simplex_closed_form, verify_ehrhart};
use ehrlab_core::polyalg::QPoly;
use ehrlab_core::polytope::LatticePolytope;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn naive_count(p: &LatticePolytope, t: i64, shift: i64) -> u64 {
    let d = p.dim();
    let lo: Vec<i64> = (0..d).map(|i| p.vertices().iter().map(|v| v[i]).min().unwrap() * t).collect();
    let hi: Vec<i64> = (0..d).map(|i| p.vertices().iter().map(|v| v[i]).max().unwrap() * t).collect();
    let mut x = lo.clone();
    let mut n = 0;
    loop {
        if p.facets().iter().all(|h| {
            h.normal.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() <= h.rhs * t + shift
        }) {
            n += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return n;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

fn reflexive_builtins() -> Vec<&'static str> {
    vec![
        "cube:1", "cube:2", "cube:3", "cube:4",
        "fano-simplex:1", "fano-simplex:2", "fano-simplex:3", "fano-simplex:4",
        "del-pezzo:2", "del-pezzo:3", "del-pezzo:4",
        "polar:cube:3", "polar:del-pezzo:2", "polar:del-pezzo:3",
        "polar:fano-simplex:3",
        "free-sum:cube:1,cube:1", "free-sum:del-pezzo:2,cube:1",
        "free-sum:fano-simplex:2,fano-simplex:2",
    ]
}

#[test]
fn counts_agree_with_naive_scan() {
    for s in reflexive_builtins() {
        let p = LatticePolytope::builtin(s).unwrap();
        let tmax = if p.dim() <= 3 { 3 } else { 2 };
        for t in 1..=tmax {
            assert_eq!(p.lattice_point_count(t as u64), naive_count(&p, t, 0), "{s} t={t}");
            assert_eq!(p.interior_point_count(t as u64), naive_count(&p, t, -1), "{s} t={t}");
        }
        assert_eq!(p.lattice_point_count(0), 1);
    }
}

#[test]
fn facets_are_tight_and_valid() {
    for s in reflexive_builtins() {
        let p = LatticePolytope::builtin(s).unwrap();
        for h in p.facets() {
            let vals: Vec<i64> = p
                .vertices()
                .iter()
                .map(|v| h.normal.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect();
            assert_eq!(*vals.iter().max().unwrap(), h.rhs, "{s} {h}");
            assert!(vals.iter().filter(|&&v| v == h.rhs).count() >= p.dim());
        }
    }
}

#[test]
fn closed_form_facets_match_enumeration() {
    for s in reflexive_builtins() {
        let p = LatticePolytope::builtin(s).unwrap();
        if p.vertices().len() > 40 {
            continue;
        }
        let q = LatticePolytope::new(p.vertices().to_vec()).unwrap();
        assert_eq!(p, q, "{s}");
    }
}

#[test]
fn polar_is_an_involution() {
    for s in reflexive_builtins() {
        let p = LatticePolytope::builtin(s).unwrap();
        assert!(p.is_reflexive().unwrap(), "{s}");
        let pp = p.polar().unwrap().polar().unwrap();
        assert_eq!(p, pp, "{s}");
    }
}

#[test]
fn smoothness_of_polar_del_pezzo() {
    let expect = [(2, true), (3, false), (4, true), (5, false)];
    for (d, smooth) in expect {
        let p = LatticePolytope::del_pezzo(d).unwrap().polar().unwrap();
        assert_eq!(p.is_smooth().unwrap(), smooth, "d={d}");
    }
    assert!(LatticePolytope::cube(3).unwrap().is_smooth().unwrap());
    assert!(!LatticePolytope::cube(3).unwrap().polar().unwrap().is_smooth().unwrap());
}

#[test]
fn cube_polynomials() {
    for d in 1..=4usize {
        let p = LatticePolytope::cube(d).unwrap();
        for t in 0..=4u64 {
            assert_eq!(p.lattice_point_count(t), (2 * t + 1).pow(d as u32));
        }
        let e = ehrhart_polynomial(&p).unwrap();
        let lead = e.poly.coeff(d);
        assert_eq!(lead, BigRational::from_integer(BigInt::from(1u64 << d)));
    }
}

#[test]
fn fano_simplex_matches_closed_form() {
    for d in 1..=5usize {
        let p = LatticePolytope::fano_simplex(d).unwrap();
        let e = ehrhart_polynomial(&p).unwrap();
        assert_eq!(e.poly, fano_simplex_closed_form(d), "d={d}");
    }
}

#[test]
fn verify_reports_pass_on_reflexive_builtins() {
    for s in reflexive_builtins() {
        let p = LatticePolytope::builtin(s).unwrap();
        let e = ehrhart_polynomial(&p).unwrap();
        let r = verify_ehrhart(&e, &p);
        assert!(r.all_passed(), "{s}: {:?}", r.checks);
        assert!(r.get("palindromy").is_some());
    }
}

#[test]
fn non_reflexive_dilate_skips_palindromy() {
    let p = LatticePolytope::cube(2).unwrap().dilate(2).unwrap();
    let e = ehrhart_polynomial(&p).unwrap();
    assert_eq!(e.poly, QPoly::from_ints(&[1, 8, 16]));
    let r = verify_ehrhart(&e, &p);
    assert!(r.all_passed());
    assert!(r.get("palindromy").is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_hulls_count_like_naive(pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 4..9)) {
        if let Ok(p) = LatticePolytope::new(pts.clone()) {
            for v in &pts {
                for h in p.facets() {
                    let s: i64 = h.normal.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert!(s <= h.rhs);
                }
            }
            prop_assert_eq!(p.lattice_point_count(1), naive_count(&p, 1, 0));
            prop_assert_eq!(p.lattice_point_count(2), naive_count(&p, 2, 0));
            let e = ehrhart_polynomial(&p).unwrap();
            let extra = e.poly.evaluate(&BigRational::from_integer(BigInt::from(4)));
            prop_assert_eq!(extra, BigRational::from_integer(BigInt::from(naive_count(&p, 4, 0))));
        }
    }
}
