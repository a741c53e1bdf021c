use ehrlab_core::polyalg::QPoly;
use ehrlab_core::roots::{isolate_roots, isolate_roots_with_ceiling, ComplexBall, Dyadic, Mag, RootError};
use num_bigint::BigInt;
use proptest::prelude::*;

fn f64s(b: &ComplexBall) -> (f64, f64, f64) {
    (b.re.to_f64(), b.im.to_f64(), b.rad.to_f64())
}

#[test]
fn quadratic_conjugate_pair() {
    let r = isolate_roots(&QPoly::from_ints(&[3, 1, 1]), 64).unwrap();
    assert_eq!(r.degree(), 2);
    let s = 11f64.sqrt() / 2.0;
    let (a, b) = (f64s(&r.balls[0]), f64s(&r.balls[1]));
    assert!((a.0 + 0.5).abs() < 1e-12 && (b.0 + 0.5).abs() < 1e-12);
    assert!((a.1 + s).abs() < 1e-12 && (b.1 - s).abs() < 1e-12);
    let (perm, _) = r.conjugation().unwrap();
    assert_eq!(perm, vec![1, 0]);
}

#[test]
fn known_integer_roots() {
    let f = &(&QPoly::from_ints(&[-1, 1]) * &QPoly::from_ints(&[-2, 1])) * &QPoly::from_ints(&[-3, 1]);
    let r = isolate_roots(&f, 64).unwrap();
    for (i, b) in r.balls.iter().enumerate() {
        assert!(b.rad.to_f64() < 2f64.powi(-20));
        let (m, inside) = b.nearest_integer();
        assert!(inside);
        assert_eq!(m, BigInt::from(i as i64 + 1));
    }
}

#[test]
fn linear_root_is_exact() {
    let r = isolate_roots(&QPoly::from_ints(&[1, 2]), 64).unwrap();
    assert_eq!(r.balls.len(), 1);
    assert!(r.balls[0].contains_point(&Dyadic::from_f64(-0.5), &Dyadic::zero()));
    let r3 = isolate_roots(&QPoly::from_ints(&[1, 3]), 64).unwrap();
    assert!(r3.balls[0].rad.to_f64() > 0.0);
    assert!((r3.balls[0].re.to_f64() + 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn errors() {
    let sq = QPoly::from_ints(&[1, 2, 1]);
    assert_eq!(isolate_roots(&sq, 64).unwrap_err(), RootError::NotSquarefree);
    assert_eq!(isolate_roots(&QPoly::from_ints(&[4]), 64).unwrap_err(), RootError::Constant);
    let r = isolate_roots_with_ceiling(&QPoly::from_ints(&[3, 1, 1]), 64, 64).unwrap();
    assert!(matches!(r.refine(), Err(RootError::PrecisionCeiling(64))));
}

#[test]
fn refine_shrinks_and_nests() {
    let f = QPoly::from_ints(&[24, 50, 55, 10, 5]);
    let r = isolate_roots(&f, 64).unwrap();
    let r2 = r.refine().unwrap();
    assert_eq!(r2.precision, 128);
    for (old, new) in r.balls.iter().zip(&r2.balls) {
        assert!(new.inside(old));
        assert!(new.rad.to_f64() < old.rad.to_f64());
        // at least quadratic: log radius roughly doubles in magnitude
        let (lo, ln) = (old.rad.log2_floor().unwrap(), new.rad.log2_floor().unwrap());
        assert!(ln <= 2 * lo + 8, "{lo} -> {ln}");
    }
}

#[test]
fn self_reciprocal_pairs() {
    let r = isolate_roots(&QPoly::from_ints(&[3, 1, 1]), 64).unwrap();
    let p = r.pair_self_reciprocal().unwrap();
    assert_eq!(p.balls.len(), 2);
    // Fano simplex, d = 4: 24·L(t) = 5t⁴+10t³+55t²+50t+24
    let f = QPoly::from_ints(&[24, 50, 55, 10, 5]);
    let p = isolate_roots(&f, 64).unwrap().pair_self_reciprocal().unwrap();
    for pair in p.balls.chunks(2) {
        let s = pair[0].re.add(&pair[1].re).to_f64();
        let t = pair[0].im.add(&pair[1].im).to_f64();
        assert!((s + 1.0).abs() < 1e-9 && t.abs() < 1e-9);
    }
}

fn check_vieta(f: &QPoly) {
    let r = isolate_roots(f, 64).unwrap();
    let n = r.degree();
    let an = f.coeff(n).clone();
    let total_rad: f64 = r.balls.iter().map(|b| b.rad.to_f64()).sum();
    let s_re: f64 = r.balls.iter().map(|b| b.re.to_f64()).sum();
    let s_im: f64 = r.balls.iter().map(|b| b.im.to_f64()).sum();
    let expect = -(f.coeff(n - 1) / &an);
    let expect = num_traits::ToPrimitive::to_f64(&expect).unwrap();
    assert!((s_re - expect).abs() <= total_rad + 1e-9 * (1.0 + expect.abs()));
    assert!(s_im.abs() <= total_rad + 1e-9);
    for res in r.residual_balls() {
        assert!(res.contains_zero());
    }
    // disjoint
    for i in 0..n {
        for j in i + 1..n {
            assert!(r.balls[i].disjoint(&r.balls[j]));
        }
    }
}

#[test]
fn assorted_polys_satisfy_vieta() {
    for coeffs in [
        vec![24i64, 50, 55, 10, 5],
        vec![3, 7, 3, 2],
        vec![1, 0, -10, 0, 1],
        vec![-7, 0, 0, 0, 0, 0, 0, 1],
    ] {
        let f = QPoly::from_ints(&coeffs);
        if f.is_squarefree() {
            check_vieta(&f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_polys_certify(coeffs in prop::collection::vec(-30i64..30, 3..10)) {
        let mut c = coeffs.clone();
        if *c.last().unwrap() == 0 {
            *c.last_mut().unwrap() = 1;
        }
        let f = QPoly::from_ints(&c);
        prop_assume!(f.is_squarefree());
        check_vieta(&f);
    }
}

#[test]
fn mag_is_upper_bound_of_dyadic() {
    let x = Dyadic::new(BigInt::from(987_654_321_123i64), -33);
    assert!(Mag::from_dyadic(&x).to_dyadic() >= x);
}
