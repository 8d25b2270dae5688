use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use socle_lab::fields::*;
use socle_lab::Error;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn prime_field_construction() {
    let f7 = prime_field(7).unwrap();
    assert_eq!(f7.characteristic(), 7);
    assert_eq!(f7.order(), Some(7));
    assert_eq!(prime_field(2).unwrap().order(), Some(2));
    assert_eq!(prime_field(4).unwrap_err(), Error::NotPrime(4));
}

#[test]
fn cyclotomic_degrees() {
    assert_eq!(cyclotomic(5).unwrap().total_degree(), 4);
    assert_eq!(cyclotomic(1).unwrap().total_degree(), 1);
    assert_eq!(cyclotomic(1).unwrap().name(), "Q");
    assert_eq!(cyclotomic(8).unwrap().total_degree(), 4);
    assert_eq!(cyclotomic(5).unwrap().name(), "Q(zeta5)");
}

#[test]
fn extend_examples() {
    let f2 = prime_field(2).unwrap();
    let f4 = f2
        .extend(&UniPoly::from_i64s(&f2, &[1, 1, 1]), "w", &ExtendOptions::default())
        .unwrap();
    assert_eq!(f4.order(), Some(4));
    assert_eq!(f4.name(), "Fp(2)(w:x^2 + x + 1)");
    let w = f4.generator(0);
    assert_eq!(&w * &w, &w + &f4.one());

    let qq = rationals();
    let k = qq
        .extend(&UniPoly::from_i64s(&qq, &[-2, 0, 0, 0, 0, 1]), "r5", &ExtendOptions::default())
        .unwrap();
    assert_eq!(k.total_degree(), 5);

    let err = f2
        .extend(&UniPoly::from_i64s(&f2, &[1, 0, 1]), "w", &ExtendOptions::default())
        .unwrap_err();
    assert!(matches!(err, Error::Reducible { .. }));
}

#[test]
fn assertion_mode_is_recorded() {
    let k = cyclotomic(5).unwrap();
    let f = UniPoly::from_i64s(&k, &[-3, 0, 1]);
    assert!(matches!(
        k.extend(&f, "s", &ExtendOptions::default()),
        Err(Error::UncertifiedIrreducibility(_))
    ));
    let l = k
        .extend(&f, "s", &ExtendOptions { allow_assertion: true })
        .unwrap();
    assert!(l.has_assertions());
    assert_eq!(l.steps()[1].certificate, Irreducibility::Asserted);
}

#[test]
fn inverse_of_zero() {
    let f7 = prime_field(7).unwrap();
    assert_eq!(f7.zero().inv().unwrap_err(), Error::DivisionByZero);
    let k = cyclotomic(5).unwrap();
    assert_eq!(k.zero().inv().unwrap_err(), Error::DivisionByZero);
}

#[test]
fn parent_mismatch() {
    let a = prime_field(7).unwrap().one();
    let b = prime_field(5).unwrap().one();
    assert!(matches!(a.try_add(&b), Err(Error::ParentMismatch(_, _))));
}

#[test]
fn finite_field_names_and_order() {
    let f81 = finite_field(3, 4, "g").unwrap();
    assert_eq!(f81.name(), "Fq(3,4;g)");
    assert_eq!(f81.order(), Some(81));
    let g = f81.generator(0);
    assert_eq!(g.pow_u64(80), f81.one());
    assert_ne!(g.pow_u64(40), f81.one());
    assert_ne!(g.pow_u64(16), f81.one());
}

#[test]
fn element_display() {
    let k = cyclotomic(5).unwrap();
    let z = k.generator(0);
    let x = &(&z.pow_u64(3) * &k.from_rational(&q(3, 2))) - &k.from_i64(1);
    assert_eq!(x.to_string(), "3/2*zeta5^3 - 1");
    // zeta^4 = -(1 + z + z^2 + z^3)
    assert_eq!(z.pow_u64(4).to_string(), "-zeta5^3 - zeta5^2 - zeta5 - 1");
}

#[test]
fn span_closure_examples() {
    let k = cyclotomic(5).unwrap();
    let x5m2 = UniPoly::from_i64s(&k, &[-2, 0, 0, 0, 0, 1]);
    let l = k.extend(&x5m2, "r5", &ExtendOptions::default()).unwrap();
    assert_eq!(l.total_degree(), 20);
    let r = l.generator(1);
    assert_eq!(span_closure(&l, std::slice::from_ref(&r)).unwrap().dimension, 5);
    assert_eq!(span_closure(&l, &[l.one()]).unwrap().dimension, 1);
    let z = l.generator(0);
    let s = &z + &z.pow_u64(4);
    assert_eq!(&(&s * &s) + &s, l.one());
    assert_eq!(span_closure(&l, &[s]).unwrap().dimension, 2);
    assert_eq!(span_closure(&l, &[z.clone(), r.clone()]).unwrap().dimension, 20);
    assert_eq!(span_closure(&l, &[&z * &r]).unwrap().dimension, 5);
}

#[test]
fn roots_of_unity() {
    let f7 = prime_field(7).unwrap();
    let e = f7.root_of_unity(3).unwrap();
    assert_eq!(e.pow_u64(3), f7.one());
    assert!(f7.root_of_unity(5).is_none());
    let k = cyclotomic(3).unwrap();
    assert!(k.root_of_unity(3).is_some());
    assert!(k.root_of_unity(6).is_some());
    assert!(k.root_of_unity(5).is_none());
    assert!(rationals().root_of_unity(2).is_some());
}

#[test]
fn embedding_pads_coordinates() {
    let k = cyclotomic(5).unwrap();
    let l = k
        .extend(&UniPoly::from_i64s(&k, &[-2, 0, 0, 0, 0, 1]), "r5", &ExtendOptions::default())
        .unwrap();
    let z = k.generator(0);
    assert_eq!(l.embed(&z).unwrap(), l.generator(0));
    assert!(l.embed(&prime_field(3).unwrap().one()).is_err());
}

fn small_fields() -> Vec<Field> {
    vec![
        prime_field(7).unwrap(),
        finite_field(2, 3, "a").unwrap(),
        finite_field(3, 2, "b").unwrap(),
        // too large for log tables
        finite_field(5, 7, "c").unwrap(),
        cyclotomic(5).unwrap(),
        {
            let f4 = finite_field(2, 2, "w").unwrap();
            // x^2 + x + w is irreducible over F_4
            let f = UniPoly::new(&f4, vec![f4.generator(0), f4.one(), f4.one()]);
            f4.extend(&f, "v", &ExtendOptions::default()).unwrap()
        },
    ]
}

fn element(f: &Field, seed: &[i64]) -> FieldElement {
    let n = f.total_degree();
    if f.characteristic() == 0 {
        f.from_rational_coords(
            (0..n)
                .map(|i| q(seed[i % seed.len()], 1 + (seed[(i + 1) % seed.len()].rem_euclid(3))))
                .collect(),
        )
        .unwrap()
    } else {
        f.from_mod_coords((0..n).map(|i| seed[i % seed.len()].rem_euclid(1 << 20) as u64).collect())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..6, a in prop::collection::vec(-9i64..9, 1..6),
                    b in prop::collection::vec(-9i64..9, 1..6), c in prop::collection::vec(-9i64..9, 1..6)) {
        let f = &small_fields()[fi];
        let (x, y, z) = (element(f, &a), element(f, &b), element(f, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &f.one(), x.clone());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), f.one());
        }
        let p = f.characteristic();
        if p != 0 {
            prop_assert_eq!((&x + &y).pow_u64(p), &x.pow_u64(p) + &y.pow_u64(p));
            prop_assert_eq!(x.pth_root().unwrap().pow_u64(p), x.clone());
        }
    }

    #[test]
    fn span_closure_divides_degree(fi in 0usize..6, a in prop::collection::vec(-9i64..9, 1..6),
                                   b in prop::collection::vec(-9i64..9, 1..6)) {
        let f = &small_fields()[fi];
        let (x, y) = (element(f, &a), element(f, &b));
        let d1 = span_closure(f, std::slice::from_ref(&x)).unwrap().dimension;
        let d2 = span_closure(f, &[x, y]).unwrap().dimension;
        prop_assert!(d1 <= d2);
        prop_assert_eq!(f.total_degree() % d1, 0);
        prop_assert_eq!(f.total_degree() % d2, 0);
    }

    #[test]
    fn factorization_round_trip(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                                coeffs in prop::collection::vec(0u64..7, 2..9)) {
        let f = prime_field(p).unwrap();
        let poly = UniPoly::new(&f, coeffs.iter().map(|&c| f.from_u64(c)).collect());
        prop_assume!(poly.degree().unwrap_or(0) >= 1);
        let fac = factor_finite(&poly).unwrap();
        prop_assert_eq!(fac.expand(), poly);
        for (g, _) in &fac.factors {
            let again = factor_finite(g).unwrap();
            prop_assert!(again.is_irreducible());
        }
    }
}
