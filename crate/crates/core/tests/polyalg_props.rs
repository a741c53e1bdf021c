use ehrlab_core::ehrhart::fano_simplex_closed_form;
use ehrlab_core::polyalg::{
    discriminant, factor, is_square_rational, parse_poly, rational_roots, resultant,
    squarefree_decomposition, QPoly, ZPoly,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::*;

#[test]
fn factor_round_trip_on_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let count = rng.gen_range(1..=3);
        let mut parts: Vec<P> = (0..count).map(|_| random_irreducible(&mut rng)).collect();
        if rng.gen_bool(0.2) {
            parts.push(parts[0].clone());
        }
        let f = parts.iter().skip(1).fold(parts[0].clone(), |a, b| mul(&a, b));
        let scale = rng.gen_range(1..=6) as i128;
        let fq = to_q(&f.iter().map(|c| c * scale).collect::<Vec<_>>());
        let fac = factor(&fq).unwrap();
        assert_eq!(fac.reconstruct(), fq);
        parts.sort();
        assert_eq!(factored(&fq), parts, "{fq}");
    }
}

#[test]
fn factor_agrees_with_kronecker() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        // half the instances are built reducible on purpose
        let f = if i % 2 == 0 {
            let deg = rng.gen_range(1..=4);
            random_poly(&mut rng, deg, 20)
        } else {
            let (da, db) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let a = random_poly(&mut rng, da, 6);
            let b = random_poly(&mut rng, db, 6);
            normalize(mul(&a, &b))
        };
        assert_eq!(factored(&to_q(&f)), kronecker_factor(&f), "{f:?}");
    }
}

#[test]
fn kronecker_oracle_self_check() {
    assert_eq!(kronecker_factor(&[24, 50, 55, 10, 5]), vec![vec![24, 50, 55, 10, 5]]);
    assert_eq!(kronecker_factor(&[3, 7, 3, 2]), vec![vec![1, 2], vec![3, 1, 1]]);
    assert_eq!(kronecker_factor(&[1, 0, 0, 0, 4]), vec![vec![1, -2, 2], vec![1, 2, 2]]);
}

#[test]
fn listed_examples() {
    let q = QPoly::from_ints;
    assert_eq!(QPoly::gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])), q(&[-1, 1]));
    assert_eq!(q(&[1, 6, 12, 8]).derivative(), q(&[6, 24, 24]));
    let one = BigRational::from_integer(1.into());
    assert_eq!(fano_simplex_closed_form(3).evaluate(&one), BigRational::from_integer(5.into()));
    assert_eq!(squarefree_decomposition(&q(&[1, 6, 12, 8])).unwrap(), vec![(q(&[1, 2]), 3)]);
    let f = &q(&[-1, 1]) * &q(&[-2, 1]).pow(2);
    assert_eq!(
        squarefree_decomposition(&f).unwrap(),
        vec![(q(&[-1, 1]), 1), (q(&[-2, 1]), 2)]
    );
    let half = BigRational::new((-1).into(), 2.into());
    assert_eq!(rational_roots(&q(&[1, 2]).pow(5)).unwrap(), vec![(half.clone(), 5)]);
    assert_eq!(rational_roots(&q(&[3, 7, 3, 2])).unwrap(), vec![(half, 1)]);
    assert!(rational_roots(&q(&[3, 1, 1])).unwrap().is_empty());
    let fac = factor(&q(&[1, 2]).pow(4)).unwrap();
    assert_eq!(fac.factors, vec![(ZPoly::from_ints(&[1, 2]), 4)]);
    assert_eq!(discriminant(&q(&[3, 1, 1])).unwrap(), BigRational::from_integer((-11).into()));
    assert_eq!(discriminant(&q(&[24, 50, 5])).unwrap(), BigRational::from_integer(2020.into()));
    assert!(!is_square_rational(&BigRational::new(189.into(), 5.into())));
    assert!(is_square_rational(&BigRational::new(9.into(), 4.into())));
    assert!(is_square_rational(&BigRational::from_integer(0.into())));
    assert_eq!(parse_poly("5t^4+10t^3+55t^2+50t+24").unwrap(), q(&[24, 50, 55, 10, 5]));
    assert_eq!(parse_poly("24,50,55,10,5").unwrap(), q(&[24, 50, 55, 10, 5]));
}

fn small_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 2..=5).prop_filter("nonconstant", |v| *v.last().unwrap() != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discriminant_of_product(f in small_poly(), g in small_poly()) {
        let (f, g) = (QPoly::from_ints(&f), QPoly::from_ints(&g));
        let lhs = discriminant(&(&f * &g)).unwrap();
        let r = resultant(&f, &g);
        let rhs = discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_of_linears(a in -50i64..50, b in -50i64..50) {
        let r = resultant(&QPoly::from_ints(&[-a, 1]), &QPoly::from_ints(&[-b, 1]));
        prop_assert!(r == BigRational::from_integer((a - b).into()) || r == BigRational::from_integer((b - a).into()));
    }
}
