use num_integer::Integer;
use proptest::prelude::*;
use socle_lab::extensions::*;
use socle_lab::fields::{rationals, Field, FieldElement, UniPoly};
use socle_lab::groups::{catalog, frattini_p, subgroups, Subgroup};
use socle_lab::parse::{parse_element, parse_field};
use socle_lab::Error;

fn el(f: &Field, s: &str) -> FieldElement {
    parse_element(f, s).unwrap()
}

fn radical_field() -> (Field, GaloisData) {
    let f = parse_field("Q(zeta5)(r:x^5-2)").unwrap();
    let sigma = Automorphism::from_images(&f, vec![el(&f, "zeta5"), el(&f, "zeta5*r")]).unwrap();
    let tau = Automorphism::from_images(&f, vec![el(&f, "zeta5^2"), el(&f, "r")]).unwrap();
    let g = GaloisData::generate(&f, "Gal", &[sigma, tau]).unwrap();
    (f, g)
}

#[test]
fn radical_extension_is_not_disjoint() {
    let (f, g) = radical_field();
    assert_eq!(g.group.order(), 20);
    assert!(g.is_full());
    assert_eq!(subgroups(&g.group).unwrap().len(), subgroups(&catalog("F20").unwrap()).unwrap().len());
    let inst = ExtensionInstance {
        ambient: f.clone(),
        sub1: vec![el(&f, "r")],
        sub2: vec![el(&f, "zeta5*r")],
        galois: Some(g.clone()),
    };
    let d = disjointness_check(&inst).unwrap();
    assert_eq!((d.dim1, d.dim2, d.dim_compositum, d.linearly_disjoint), (5, 5, 20, false));
    assert_eq!(d.galois_verdict, Some(false));
}

#[test]
fn radical_extension_socles() {
    let (f, g) = radical_field();
    for gen in ["r", "zeta5*r"] {
        let h = g.stabilizer(&[el(&f, gen)]);
        assert_eq!(h.order(), 4);
        let s = socle_subgroup(&g.group, &h, 2).unwrap();
        assert_eq!(s.rank, 0);
        assert_eq!(s.subgroup, Subgroup::whole(&g.group));
    }
    let s = socle_subgroup(&g.group, &Subgroup::trivial(&g.group), 2).unwrap();
    assert_eq!((s.rank, s.subgroup.index()), (1, 2));
    let fixed = g.fixed_field(&s.subgroup).unwrap();
    assert_eq!(fixed.len(), 2);
    let w = el(&f, "zeta5 + zeta5^4");
    for &k in s.subgroup.members() {
        assert_eq!(g.automorphisms[k].apply(&w), w);
    }
    let sq = el(&f, "(2*(zeta5 + zeta5^4) + 1)^2");
    assert_eq!(sq, el(&f, "5"));
}

#[test]
fn automorphism_verification_rejects_bad_images() {
    let f = parse_field("Q(zeta5)(r:x^5-2)").unwrap();
    assert!(Automorphism::from_images(&f, vec![el(&f, "zeta5"), el(&f, "2*r")]).is_err());
    assert!(Automorphism::from_images(&f, vec![el(&f, "zeta5^5"), el(&f, "r")]).is_err());
    assert!(Automorphism::from_images(&f, vec![el(&f, "zeta5")]).is_err());
}

fn zeta8() -> (Field, GaloisData) {
    let f = parse_field("Q(zeta8)").unwrap();
    let a = Automorphism::from_images(&f, vec![el(&f, "zeta8^3")]).unwrap();
    let b = Automorphism::from_images(&f, vec![el(&f, "zeta8^5")]).unwrap();
    let g = GaloisData::generate(&f, "Gal", &[a, b]).unwrap();
    (f, g)
}

#[test]
fn biquadratic_subfields_are_disjoint() {
    let (f, g) = zeta8();
    let sqrt2 = el(&f, "zeta8 + zeta8^7");
    assert_eq!(&sqrt2 * &sqrt2, el(&f, "2"));
    let inst = ExtensionInstance {
        ambient: f.clone(),
        sub1: vec![sqrt2],
        sub2: vec![el(&f, "zeta8^2")],
        galois: Some(g.clone()),
    };
    let d = disjointness_check(&inst).unwrap();
    assert_eq!((d.dim1, d.dim2, d.dim_compositum, d.linearly_disjoint), (2, 2, 4, true));
    assert_eq!(d.galois_verdict, Some(true));

    let inst = ExtensionInstance {
        ambient: f.clone(),
        sub1: vec![],
        sub2: vec![el(&f, "zeta8")],
        galois: None,
    };
    let d = disjointness_check(&inst).unwrap();
    assert_eq!((d.dim1, d.dim2, d.dim_compositum, d.linearly_disjoint), (1, 4, 4, true));

    // elementary abelian group: Φ is trivial, the socle is everything
    let s = socle_subgroup(&g.group, &Subgroup::trivial(&g.group), 2).unwrap();
    assert_eq!((s.subgroup.order(), s.rank), (1, 2));
}

#[test]
fn socle_of_trivial_subgroup_is_frattini() {
    for name in ["F20", "S4", "Q8", "C6xC2", "A4"] {
        let g = catalog(name).unwrap();
        for p in [2, 3] {
            let s = socle_subgroup(&g, &Subgroup::trivial(&g), p).unwrap();
            let f = frattini_p(&g, p).unwrap();
            assert_eq!(s.subgroup, f.phi);
            assert_eq!(s.rank, f.quotient_rank);
        }
    }
}

fn element_strategy() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dimension_law_and_galois_agreement(a in 0usize..6, b in 0usize..6) {
        let (f, g) = radical_field();
        let pool = ["r", "zeta5", "zeta5*r", "r^2", "zeta5 + zeta5^4", "zeta5^2*r"];
        let inst = ExtensionInstance {
            ambient: f.clone(),
            sub1: vec![el(&f, pool[a])],
            sub2: vec![el(&f, pool[b])],
            galois: Some(g.clone()),
        };
        let d = disjointness_check(&inst).unwrap();
        prop_assert_eq!(d.dim_compositum % d.dim1.lcm(&d.dim2), 0);
        prop_assert!(d.dim_compositum <= d.dim1 * d.dim2);
        prop_assert!(d.consistent());
        prop_assert_eq!(d.dim1, g.group.order() / g.stabilizer(&inst.sub1).order());
    }

    #[test]
    fn vandermonde_reproduces_images(c in element_strategy()) {
        let f = parse_field("Q(zeta5)").unwrap();
        let thetas: Vec<FieldElement> = (1..=4).map(|k| el(&f, &format!("zeta5^{k}"))).collect();
        let conj = ConjugateSet::new(thetas.clone()).unwrap();
        // σ_k: zeta5 ↦ zeta5^k applied to λ = Σ c_j zeta5^j
        let images: Vec<FieldElement> = thetas
            .iter()
            .map(|t| c.iter().enumerate().fold(f.zero(), |acc, (j, &cj)| &acc + &(&f.from_i64(cj) * &t.pow_u64(j as u64))))
            .collect();
        let ell = vandermonde_coordinates(&images, &conj).unwrap();
        for (t, im) in thetas.iter().zip(&images) {
            let v = ell.iter().enumerate().fold(f.zero(), |acc, (k, l)| &acc + &(l * &t.pow_u64(k as u64)));
            prop_assert_eq!(&v, im);
        }
        prop_assert_eq!(ell, (0..4).map(|k| f.from_i64(c[k])).collect::<Vec<_>>());
    }
}

#[test]
fn vandermonde_examples() {
    let f = parse_field("Q(s:x^2-2)").unwrap();
    let conj = ConjugateSet::new(vec![el(&f, "s"), el(&f, "-s")]).unwrap();
    let ell = vandermonde_coordinates(&[el(&f, "3+5*s"), el(&f, "3-5*s")], &conj).unwrap();
    assert_eq!(ell, vec![el(&f, "3"), el(&f, "5")]);
    let ell = vandermonde_coordinates(&[el(&f, "s"), el(&f, "-s")], &conj).unwrap();
    assert_eq!(ell, vec![f.zero(), f.one()]);
    let ell = vandermonde_coordinates(&[f.one(), f.one()], &conj).unwrap();
    assert_eq!(ell, vec![f.one(), f.zero()]);
    assert!(matches!(
        ConjugateSet::new(vec![el(&f, "s"), el(&f, "s")]),
        Err(Error::SingularSystem)
    ));
}

#[test]
fn leading_coefficient_certificates() {
    let q = rationals();
    let l = parse_field("Q(s:x^2-2)").unwrap();
    let s = el(&l, "s");
    let phi = UniPoly::monomial(s.clone(), 1);
    let rel = vec![UniPoly::from_i64s(&q, &[0, 0, -2]), UniPoly::zero(&q), UniPoly::one(&q)];
    let c = leading_coeff_certificate(&phi, &rel).unwrap();
    assert_eq!(c.alpha, s);
    assert_eq!(c.coefficients, vec![q.from_i64(-2), q.zero(), q.one()]);
    assert!(!c.made_integral);

    // t·phi² − 2t = 0 with phi = s needs the integrality step
    let phi = UniPoly::constant(s.clone());
    let rel = vec![UniPoly::from_i64s(&q, &[0, -2]), UniPoly::zero(&q), UniPoly::from_i64s(&q, &[0, 1])];
    let c = leading_coeff_certificate(&phi, &rel).unwrap();
    assert!(c.made_integral);
    assert_eq!(c.coefficients, vec![q.from_i64(-2), q.zero(), q.one()]);

    // a non-monic constant leading coefficient: 3·phi² − 6t² = 0
    let phi = UniPoly::monomial(s.clone(), 1);
    let rel = vec![UniPoly::from_i64s(&q, &[0, 0, -6]), UniPoly::zero(&q), UniPoly::from_i64s(&q, &[3])];
    let c = leading_coeff_certificate(&phi, &rel).unwrap();
    assert_eq!(c.coefficients, vec![q.from_i64(-6), q.zero(), q.from_i64(3)]);

    let t = UniPoly::x(&q);
    let c = leading_coeff_certificate(&t, &[t.neg(), UniPoly::one(&q)]).unwrap();
    assert_eq!(c.alpha, q.one());
    assert_eq!(c.coefficients, vec![q.from_i64(-1), q.one()]);

    assert!(matches!(
        leading_coeff_certificate(&t, &[UniPoly::zero(&q), UniPoly::zero(&q)]),
        Err(Error::InvalidRelation(_))
    ));
    assert!(matches!(
        leading_coeff_certificate(&t, &[UniPoly::one(&q), UniPoly::one(&q)]),
        Err(Error::InvalidRelation(_))
    ));
}
