use ehrlab_core::ehrhart::fano_simplex_closed_form;
use ehrlab_core::galois::*;
use ehrlab_core::permgrp::{PermGroup, TransitiveTable};
use ehrlab_core::polyalg::{discriminant, factor, QPoly, ZPoly};
use ehrlab_core::roots::isolate_roots;
use num_bigint::BigInt;
use num_rational::BigRational;

fn zp(c: &[i64]) -> ZPoly {
    ZPoly::from_ints(c)
}

fn labelled(f: &ZPoly) -> LabelledRoots {
    LabelledRoots::new(isolate_roots(&f.to_qpoly(), 128).unwrap())
}

fn order_of(f: &QPoly) -> u64 {
    galois_group(f).unwrap().combined_order_exact.unwrap()
}

/// Every cycle type seen modulo 50 primes lies in the reported group.
fn assert_cycle_types(r: &GaloisResult) {
    for fr in &r.factors {
        let z = ZPoly::new(fr.factor.iter().map(|c| c.parse::<BigInt>().unwrap()).collect());
        let types = sample_cycle_types(&z, 50);
        let g = fr.group.as_ref().expect("group known");
        assert!(group_has_cycle_types(g, types.keys()), "{} misses {types:?}", fr.name);
    }
}

#[test]
fn small_descents() {
    let cases: &[(&[i64], u64, &str)] = &[
        (&[3, 1, 1], 2, "C2"),
        (&[1, 1, 0, 0, 1], 24, "S4"),
        (&[1, 0, 0, 0, 1], 4, "V4"),
        (&[-1, -3, 0, 1], 3, "C3"),
        (&[24, 50, 55, 10, 5], 8, "D4"),
    ];
    for (c, order, name) in cases {
        let r = galois_group(&QPoly::from_ints(c)).unwrap();
        assert_eq!(r.combined_order_exact, Some(*order), "{c:?}");
        assert_eq!(r.factors[0].name, *name);
        assert_cycle_types(&r);
    }
}

#[test]
fn cube_polynomial_is_trivial() {
    let f = QPoly::from_ints(&[1, 6, 12, 8]);
    let r = galois_group(&f).unwrap();
    assert_eq!(r.combined_order_exact, Some(1));
    assert_eq!(r.factors.len(), 1);
    assert_eq!(r.factors[0].multiplicity, 3);
}

#[test]
fn fano_simplex_orders() {
    let fact = |k: u64| (1..=k).product::<u64>();
    for d in 2..=10usize {
        let k = (d / 2) as u64;
        let f = fano_simplex_closed_form(d);
        let r = galois_group(&f).unwrap();
        assert_eq!(r.combined_order_exact, Some((1 << k) * fact(k)), "d = {d}");
        assert_cycle_types(&r);
    }
}

#[test]
fn fano_three_factors() {
    let r = galois_group(&QPoly::from_ints(&[3, 7, 3, 2])).unwrap();
    let mut degrees: Vec<usize> = r.factors.iter().map(|f| f.degree).collect();
    degrees.sort();
    assert_eq!(degrees, vec![1, 2]);
    assert_eq!(r.combined_order_exact, Some(2));
}

#[test]
fn del_pezzo_free_sum_is_s3() {
    let r = galois_group(&QPoly::from_ints(&[4, 14, 21, 15, 10, 3, 1])).unwrap();
    assert_eq!(r.factors[0].name, "S3");
    assert_eq!(r.combined_order_exact, Some(6));
    assert_cycle_types(&r);
}

#[test]
fn coprime_factor_orders_multiply() {
    // C2 × C3 with disjoint splitting fields
    let f = &QPoly::from_ints(&[3, 1, 1]) * &QPoly::from_ints(&[-1, -3, 0, 1]);
    let r = galois_group(&f).unwrap();
    assert_eq!(r.combined_order_exact, Some(6));
    // two quadratics: only a bound
    let f = &QPoly::from_ints(&[3, 1, 1]) * &QPoly::from_ints(&[-2, 0, 1]);
    let r = galois_group(&f).unwrap();
    assert_eq!(r.combined_order_exact, None);
    assert_eq!(r.combined_order_lower_bound, 2);
}

#[test]
fn degree_nine_without_symmetry_is_unsupported() {
    let f = QPoly::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]);
    assert!(matches!(galois_group(&f), Err(GaloisError::UnsupportedDegree(9))));
    assert!(matches!(galois_group(&QPoly::from_ints(&[5])), Err(GaloisError::Constant)));
}

#[test]
fn descent_bookkeeping() {
    for c in [&[1i64, 1, 0, 0, 1][..], &[1, 0, 0, 0, 1], &[24, 50, 55, 10, 5], &[4, 14, 21, 15, 10, 3, 1]] {
        let z = zp(c);
        let d = stauduhar_descent(&z, &GaloisOptions::default()).unwrap();
        let n = z.degree().unwrap() as u64;
        let sym: u64 = (1..=n).product();
        assert_eq!(sym % d.entry.order, 0);
        assert_eq!(d.trace.accepted_index_product(), sym / d.entry.order);
        for s in &d.trace.steps {
            if s.outcome.accepted.is_some() {
                let v: BigInt = s.outcome.value.as_ref().unwrap().parse().unwrap();
                let r = ZPoly::new(
                    s.outcome.resolvent.as_ref().unwrap().iter().map(|c| c.parse().unwrap()).collect(),
                );
                assert_eq!(r.evaluate(&v), BigInt::from(0));
            }
        }
    }
}

#[test]
fn descent_is_deterministic() {
    for c in [&[24i64, 50, 55, 10, 5][..], &[4, 14, 21, 15, 10, 3, 1]] {
        let a = galois_group(&QPoly::from_ints(c)).unwrap();
        let b = galois_group(&QPoly::from_ints(c)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn invariant_for_cyclic_in_dihedral() {
    let d4 = PermGroup::from_cycle_strings(4, &["(1,2,3,4)", "(1,3)"]).unwrap();
    let c4 = PermGroup::from_cycle_strings(4, &["(1,2,3,4)"]).unwrap();
    let f = relative_invariant(&d4, &c4).unwrap();
    assert!(f.degree() <= 3);
    for s in d4.elements() {
        assert_eq!(f.is_fixed_by(&s), c4.contains(&s));
    }
    let s5 = PermGroup::symmetric(5);
    assert_eq!(relative_invariant(&s5, &PermGroup::alternating(5)).unwrap().kind, InvariantKind::Vandermonde);
    assert!(matches!(relative_invariant(&s5, &s5), Err(GaloisError::NotProperSubgroup)));
}

#[test]
fn every_table_pair_has_an_exact_invariant() {
    let table = TransitiveTable::bundled();
    for e in table.entries() {
        for k in 0..e.maximal_subgroups.len() {
            let f = table_invariant(e, k).unwrap();
            let sub = table.entry(e.degree, e.maximal_subgroups[k].index).unwrap();
            let g = e.group.conjugate(&e.maximal_subgroups[k].embedding.inverse());
            assert!(f.has_stabilizer(&g, &sub.group), "{}T{} #{k}", e.degree, e.index);
            if g.order() <= 1000 {
                for s in g.elements() {
                    assert_eq!(f.is_fixed_by(&s), sub.group.contains(&s));
                }
            }
        }
    }
}

#[test]
fn discriminant_tests() {
    let opts = GaloisOptions::default();
    let s2 = PermGroup::symmetric(2);
    let a2 = PermGroup::alternating(2);
    let v2 = InvariantPoly::vandermonde(2);
    for c in [&[3i64, 1, 1][..], &[-1, 1, 1], &[2, -4, 1]] {
        let (out, _) = resolvent_test(&mut labelled(&zp(c)), &s2, &a2, &v2, &opts).unwrap();
        assert_eq!(out.accepted, None, "{c:?}");
    }
    let (out, _) = resolvent_test(
        &mut labelled(&zp(&[-1, -3, 0, 1])),
        &PermGroup::symmetric(3),
        &PermGroup::alternating(3),
        &InvariantPoly::vandermonde(3),
        &opts,
    )
    .unwrap();
    assert!(out.accepted.is_some());
    let v: i64 = out.value.unwrap().parse().unwrap();
    assert_eq!(v.abs(), 9);
}

#[test]
fn collision_forces_substitution() {
    // x⁴ − 2: α + (−α) = 0 for both pairs of opposite roots
    let f = zp(&[-2, 0, 0, 0, 1]);
    let s4 = PermGroup::symmetric(4);
    let h = PermGroup::from_cycle_strings(4, &["(1,2)", "(3,4)"]).unwrap();
    let inv = InvariantPoly::orbit_sum(&h, &[1, 0, 0, 0]);
    assert_eq!(inv.description, "orbit sum of x1 (2 terms)");
    let (out, _) = resolvent_test(&mut labelled(&f), &s4, &h, &inv, &GaloisOptions::default()).unwrap();
    assert!(!out.tschirnhaus.is_empty());
    assert_eq!(out.tschirnhaus[0], "x + 1");
}

#[test]
fn tschirnhaus_schedule_prefix() {
    let s = tschirnhaus_schedule(7, 20);
    assert_eq!(s.len(), 20);
    let names: Vec<String> = s.iter().take(5).map(|q| q.describe()).collect();
    assert_eq!(names, ["x + 1", "x + 2", "x^2", "x^2 + x", "x^3 + x"]);
    assert_eq!(s, tschirnhaus_schedule(7, 20));
}

#[test]
fn short_cosets_reject_imaginary_quadratic() {
    let opts = GaloisOptions { short_cosets: true, ..Default::default() };
    let (out, _) = resolvent_test(
        &mut labelled(&zp(&[3, 1, 1])),
        &PermGroup::symmetric(2),
        &PermGroup::alternating(2),
        &InvariantPoly::vandermonde(2),
        &opts,
    )
    .unwrap();
    assert_eq!(out.short_cosets, Some(0));
    assert_eq!(out.accepted, None);
}

#[test]
fn short_cosets_leave_results_unchanged() {
    let opts = GaloisOptions { short_cosets: true, ..Default::default() };
    for d in 2..=9 {
        let f = fano_simplex_closed_form(d);
        let a = galois_group_with(&f, &opts).unwrap();
        assert_eq!(a.combined_order_exact, Some(order_of(&f)), "d = {d}");
    }
    // totally real: conjugation is trivial, nothing filtered
    let d = stauduhar_descent(&zp(&[-1, -3, 0, 1]), &opts).unwrap();
    assert!(d.trace.steps.iter().all(|s| s.outcome.short_cosets.is_none()));
}

#[test]
fn short_cosets_shrink_for_fano_six() {
    let opts = GaloisOptions { short_cosets: true, ..Default::default() };
    let z = fano_simplex_closed_form(6).primitive().1;
    let d = stauduhar_descent(&z, &opts).unwrap();
    let first = &d.trace.steps.iter().find(|s| s.subgroup.contains("C2wrS3")).unwrap().outcome;
    assert_eq!((first.short_cosets, first.cosets), (Some(7), 15));
    assert_eq!(d.entry.order, 48);
}

#[test]
fn short_cosets_keep_everything_for_fano_four() {
    // conjugation is α ↦ −1−α on every root, the central element of D4
    let opts = GaloisOptions { short_cosets: true, ..Default::default() };
    let d = stauduhar_descent(&zp(&[24, 50, 55, 10, 5]), &opts).unwrap();
    assert!(d.trace.steps.iter().all(|s| s.outcome.short_cosets == Some(s.outcome.cosets)));
}

#[test]
fn self_reciprocal_detection() {
    let (e, g) = detect_self_reciprocal(&zp(&[24, 50, 55, 10, 5])).unwrap();
    assert_eq!((e, g), (0, QPoly::from_ints(&[24, 50, 5])));
    let (e, g) = detect_self_reciprocal(&zp(&[3, 7, 3, 2])).unwrap();
    assert_eq!((e, g), (1, QPoly::from_ints(&[3, 1])));
    assert!(detect_self_reciprocal(&zp(&[1, 0, 0, 1])).is_none());
}

fn wreath_input(g: &[i64]) -> (ZPoly, QPoly) {
    let g = QPoly::from_ints(g);
    let f = g.compose(&QPoly::from_ints(&[0, 1, 1])).primitive().1;
    let fac = factor(&f.to_qpoly()).unwrap();
    assert_eq!(fac.factors.len(), 1, "{f} must be irreducible");
    (f, g)
}

#[test]
fn wreath_fano_four() {
    let (f, g) = wreath_input(&[24, 50, 5]);
    let w = wreath_path(&f, &g, &GaloisOptions::default()).unwrap();
    assert_eq!(w.order, Some(8));
    assert_eq!(w.diagnostics.d0, "189/5");
    assert_eq!(w.diagnostics.disc_g, "2020");
    assert!(!w.diagnostics.d0_square && !w.diagnostics.d0_disc_square);
    assert!(w.diagnostics.d0_ball_consistent);
    assert_eq!(w.diagnostics.kernel, "full");
}

#[test]
fn wreath_fano_two() {
    let (f, g) = wreath_input(&[2, 3]);
    let w = wreath_path(&f, &g, &GaloisOptions::default()).unwrap();
    assert_eq!(w.order, Some(2));
    assert_eq!(w.diagnostics.d0, "-5/3");
}

#[test]
fn wreath_agrees_with_direct_descent() {
    let gs: &[&[i64]] = &[
        &[2, 3],
        &[24, 50, 5],
        &[-2, 0, 1],
        &[-1, -3, 0, 1],
        &[1, 1, 0, 1],
        &[1, 1, 0, 0, 1],
        &[-3, 1, 1],
    ];
    let mut inputs: Vec<(ZPoly, QPoly)> = gs.iter().map(|g| wreath_input(g)).collect();
    for d in [6, 8] {
        let z = fano_simplex_closed_form(d).primitive().1;
        let (_, g) = detect_self_reciprocal(&z).unwrap();
        inputs.push((z, g));
    }
    let opts = GaloisOptions::default();
    for (f, g) in inputs {
        let w = wreath_path(&f, &g, &opts).unwrap();
        let d = stauduhar_descent(&f, &opts).unwrap();
        assert!(w.diagnostics.d0_ball_consistent);
        let (lo, hi) = w.order_bounds;
        assert!(lo <= d.entry.order && d.entry.order <= hi, "{f}");
        if let Some(o) = w.order {
            assert_eq!(o, d.entry.order, "{f}: wreath {} direct {}", w.name, d.entry.name);
        }
    }
}

#[test]
fn wreath_d0_identity() {
    let z = fano_simplex_closed_form(12).primitive().1;
    let (_, g) = detect_self_reciprocal(&z).unwrap();
    let w = wreath_path(&z, &g, &GaloisOptions::default()).unwrap();
    assert!(w.diagnostics.d0_ball_consistent);
    let k = g.degree().unwrap();
    let quarter = BigRational::new((-1).into(), 4.into());
    let lc = g.coeff(k);
    let exact = g.evaluate(&quarter) * BigRational::from_integer(BigInt::from(-4).pow(k as u32)) / lc;
    assert_eq!(w.diagnostics.d0, exact.to_string());
    assert_eq!(w.diagnostics.disc_g, discriminant(&g).unwrap().to_string());
}
