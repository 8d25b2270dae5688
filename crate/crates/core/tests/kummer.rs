mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use socle_lab::fields::finite_field;
use socle_lab::funcfield::{FunctionFieldDescriptor, RatFunc};
use socle_lab::kummer::*;
use socle_lab::parse::{parse_ratfunc, parse_ratfunc_list};
use socle_lab::Error;

fn elems(r: &socle_lab::funcfield::FunctionField, text: &str) -> Vec<RatFunc> {
    parse_ratfunc_list(r, text).unwrap()
}

#[test]
fn kummer_rank_examples() {
    let r = ring("F7(t)");
    let s = kummer_rank(&r, &elems(&r, "t, t + 1"), 3).unwrap();
    assert_eq!(s.rank, 2);
    assert!(s.is_certified());
    assert_eq!(s.valuation_matrix, vec![vec![1, 0, 0], vec![0, 1, 0]]);

    let s = kummer_rank(&r, &elems(&r, "t*(t+1)^3, t"), 3).unwrap();
    assert_eq!(s.rank, 1);
    assert!(matches!(s.status, ClassStatus::DependenceWitness(_)));
    assert!(s.verify());

    let s = kummer_rank(&r, &elems(&r, "1"), 3).unwrap();
    assert_eq!(s.rank, 0);
    assert_eq!(s.dependencies[0].nu, vec![1]);

    // 3 is not a cube in F_7: its class is a constant column
    let s = kummer_rank(&r, &elems(&r, "3, 3*t^3"), 3).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.verify());
}

#[test]
fn kummer_preconditions_enforced() {
    let r = ring("F5(t)");
    assert!(matches!(
        kummer_rank(&r, &elems(&r, "t"), 3),
        Err(Error::MissingRootOfUnity { p: 3, .. })
    ));
    let r3 = ring("F3(t)");
    assert!(matches!(kummer_rank(&r3, &elems(&r3, "t"), 3), Err(Error::WrongCharacteristic(_))));
    let rq = ring("Q(t)");
    assert!(matches!(
        kummer_rank(&rq, &elems(&rq, "t"), 3),
        Err(Error::MissingRootOfUnity { .. })
    ));
    assert!(matches!(kummer_rank(&r, &elems(&r, "0"), 2), Err(Error::InvalidArgument(_))));
}

#[test]
fn kummer_constants_over_number_fields() {
    let rq = ring("Q(t)");
    let s = kummer_rank(&rq, &elems(&rq, "2, 8, -1, t"), 2).unwrap();
    assert_eq!(s.rank, 3);
    assert!(s.verify());
    assert_eq!(kummer_rank(&rq, &elems(&rq, "-4"), 2).unwrap().rank, 1);
    assert_eq!(kummer_rank(&rq, &elems(&rq, "9/4*t^2"), 2).unwrap().rank, 0);

    let r3 = ring("Q(zeta3)(t)");
    let s = kummer_rank(&r3, &elems(&r3, "2, 4"), 3).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.verify());
    // zeta3 is not a cube: that would need a primitive 9th root of unity
    let s = kummer_rank(&r3, &elems(&r3, "zeta3"), 3).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.is_certified());

    let r5 = ring("Q(zeta5)(t)");
    let s = kummer_rank(&r5, &elems(&r5, "t, t*(t+1)^2"), 2).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.is_exact());
}

#[test]
fn unresolved_constants_give_lower_bounds() {
    // [K:Q] = 2 and p = 2 share a factor: constant classes are not resolved
    let r = ring("Q(zeta4)(t)");
    let s = kummer_rank(&r, &elems(&r, "t, 3"), 2).unwrap();
    assert_eq!(s.rank, 1);
    assert!(!s.is_exact());
    let s = kummer_rank(&r, &elems(&r, "t, 9*t"), 2).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.is_exact());
}

#[test]
fn relative_rank_examples() {
    let r = ring("F7(t,u)");
    let s = kummer_relative_rank(&r, &elems(&r, "t+u, t+u+1, t+u+2, t+u+3, t+u+4"), 3).unwrap();
    assert_eq!(s.rank, 5);
    assert!(s.is_certified());
    assert!(s.columns.iter().all(|c| matches!(
        c.kind,
        ColumnKind::Prime { kind: socle_lab::funcfield::PrimeKind::Mixed, certified: true }
    )));

    let s = kummer_relative_rank(&r, &elems(&r, "t+1"), 3).unwrap();
    assert_eq!(s.rank, 0);
    assert_eq!(s.dependencies[0].phi, parse_ratfunc(&r, "t+1").unwrap());
    assert!(s.verify());

    let s = kummer_relative_rank(&r, &elems(&r, "(t+u)*(t+u+1), t+u"), 3).unwrap();
    assert_eq!(s.rank, 2);

    let s = kummer_relative_rank(&r, &elems(&r, "(t+u)^3*(t+1)*u^2, 5*t"), 3).unwrap();
    assert_eq!(s.rank, 0);
    assert!(s.verify());

    let rq = ring("Q(zeta3)(t,u)");
    let s = kummer_relative_rank(&rq, &elems(&rq, "t+u, t+u+1, t+u+2, t+u+3, t+u+4"), 3).unwrap();
    assert_eq!(s.rank, 5);
    assert!(s.is_certified());

    let only_t = ring("F7(t)");
    assert!(matches!(
        kummer_relative_rank(&only_t, &elems(&only_t, "t"), 3),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn membership_examples() {
    let r = ring("F7(t,u)");
    let a1 = parse_ratfunc(&r, "t*u + 2").unwrap();
    let b = a1.pow(2).mul(&parse_ratfunc(&r, "(t+1)^3").unwrap());
    match pth_root_membership(&r, &b, std::slice::from_ref(&a1), 3).unwrap() {
        Membership::Member { nu, alpha } => {
            assert_eq!(nu, vec![2]);
            assert_eq!(a1.pow(2).mul(&alpha.pow(3)), b);
        }
        other => panic!("{other:?}"),
    }

    let t = parse_ratfunc(&r, "t").unwrap();
    match pth_root_membership(&r, &t, &[t.pow(2)], 3).unwrap() {
        Membership::Member { nu, alpha } => {
            assert_eq!(nu, vec![2]);
            assert_eq!(alpha, parse_ratfunc(&r, "1/t").unwrap());
        }
        other => panic!("{other:?}"),
    }

    let rq = ring("Q(t,u)");
    let (t, u) = (parse_ratfunc(&rq, "t").unwrap(), parse_ratfunc(&rq, "u").unwrap());
    assert_eq!(
        pth_root_membership(&rq, &t, &[u], 2).unwrap(),
        Membership::NonMember {
            witness: vec![("t".into(), 1)]
        }
    );
    // 3 is not a square in F_7, even though t^2 is
    let r7 = ring("F7(t)");
    let b = parse_ratfunc(&r7, "3*t^2").unwrap();
    let m = pth_root_membership(&r7, &b, &[], 2).unwrap();
    assert!(matches!(m, Membership::NonMember { ref witness } if witness[0].0 == "constant"));
}

#[test]
fn as_rank_examples() {
    let r2 = ring("F2(t)");
    let h = parse_ratfunc(&r2, "(t^3 + 1)/(t^2 + t + 1)").unwrap();
    let s = as_rank(&r2, &[wp(&h)], 2, AsStrategy::Auto).unwrap();
    assert_eq!(s.rank, 0);
    assert!(s.verify());

    let s = as_rank(&r2, &elems(&r2, "1/t^2"), 2, AsStrategy::Auto).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.is_certified());

    let r4 = ring("F4(t)");
    let s = as_rank(&r4, &elems(&r4, "1/t, g/t"), 2, AsStrategy::Auto).unwrap();
    assert_eq!(s.rank, 2);
    let e = as_rank(&r4, &elems(&r4, "1/t, g/t"), 2, AsStrategy::Enumerate).unwrap();
    assert_eq!(e.rank, 2);
    assert_eq!(e.method, EXHAUSTIVE);

    // t^2 + t ≡ 0 and 1 has trace 0 in F_4 but 1 in F_2
    assert_eq!(as_rank(&r4, &elems(&r4, "t^2 + t, 1, g"), 2, AsStrategy::Auto).unwrap().rank, 1);
    assert_eq!(as_rank(&r2, &elems(&r2, "1"), 2, AsStrategy::Auto).unwrap().rank, 1);

    assert!(matches!(
        as_rank(&r2, &elems(&r2, "t"), 3, AsStrategy::Auto),
        Err(Error::WrongCharacteristic(_))
    ));
    let r3 = ring("F3(t,u)");
    assert!(matches!(
        as_rank(&r3, &elems(&r3, "t*u, u"), 3, AsStrategy::Echelon),
        Err(Error::UnsupportedShape(_))
    ));
    let s = as_rank(&r3, &elems(&r3, "t*u, t^3*u^3 + 1"), 3, AsStrategy::Auto).unwrap();
    assert_eq!(s.rank, 2);
}

#[test]
fn as_relative_rank_examples() {
    let f81 = finite_field(3, 4, "g").unwrap();
    let r = FunctionFieldDescriptor::new(&f81, &["t"], &["u"]).unwrap();
    let basis = f81.basis();
    let q = parse_ratfunc(&r, "t + u").unwrap();
    let elems81: Vec<RatFunc> = basis
        .iter()
        .map(|c| RatFunc::constant(&r, c.clone()).div(&q).unwrap())
        .collect();
    let s = as_relative_rank(&r, &elems81, 3).unwrap();
    assert_eq!(s.rank, 4);
    assert!(s.is_certified());

    let r2 = ring("F2(t,u)");
    let s = as_relative_rank(&r2, &elems(&r2, "1/(t+u), 1/(t+u)"), 2).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.verify());

    let r4 = ring("F4(t,u)");
    let s = as_relative_rank(&r4, &elems(&r4, "1/(t+u), g/(t+u)"), 2).unwrap();
    assert_eq!(s.rank, 2);

    // pure pieces and ℘-images are absorbed
    let s = as_relative_rank(&r4, &elems(&r4, "1/(t+u), 1/(t+u) + 1/t + u^2, t/(t*u+1)"), 2).unwrap();
    assert_eq!(s.rank, 2);
    assert!(s.verify());

    assert!(matches!(
        as_relative_rank(&r2, &elems(&r2, "1/(t^2+u^2+t*u+1)^2"), 2),
        Err(Error::UnsupportedShape(_))
    ));
}

#[test]
fn wp_solve_examples() {
    let r2 = ring("F2(t)");
    let h = parse_ratfunc(&r2, "t^3 + t").unwrap();
    match wp_solve(&wp(&h)).unwrap() {
        WpOutcome::Solved(a) => assert!(a == h || a == h.add(&RatFunc::one(&r2))),
        other => panic!("{other:?}"),
    }
    let r3 = ring("F3(t)");
    let b = parse_ratfunc(&r3, "1/t").unwrap();
    match wp_solve(&b).unwrap() {
        WpOutcome::NoSolution(o) => {
            assert_eq!(
                o,
                Obstruction::PoleOrder {
                    pole: parse_ratfunc(&r3, "t").unwrap().num().clone(),
                    order: 1
                }
            );
            assert!(o.check(&b));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(wp_solve(&RatFunc::zero(&r3)).unwrap(), WpOutcome::Solved(RatFunc::zero(&r3)));

    // t over F_2: pole at infinity, caught by the linear system
    let t = parse_ratfunc(&r2, "t").unwrap();
    match wp_solve(&t).unwrap() {
        WpOutcome::NoSolution(o @ Obstruction::Inconsistent(_)) => assert!(o.check(&t)),
        other => panic!("{other:?}"),
    }
    let rq = ring("Q(t)");
    assert!(matches!(wp_solve(&parse_ratfunc(&rq, "t").unwrap()), Err(Error::UnsupportedBase(_))));

    // bivariate
    let r = ring("F3(t,u)");
    let a = parse_ratfunc(&r, "(t*u + 2)/(t + u^2)").unwrap();
    assert!(matches!(wp_solve(&wp(&a)).unwrap(), WpOutcome::Solved(x) if wp(&x) == wp(&a)));
}

#[test]
fn cpn_extension() {
    let r = ring("F7(t,u)");
    let s = kummer_relative_rank(&r, &elems(&r, "t+u, t+u+1"), 3).unwrap();
    let e = build_cpn_extension(&s).unwrap();
    assert_eq!(e.group_rank, 2);
    assert_eq!(e.galois_action, vec![vec![1, 0], vec![0, 1]]);
    assert_eq!(e.degree(), Some(9));
    assert_eq!(e.epsilon.clone().unwrap().pow_u64(3), r.base().one());

    let empty = kummer_rank(&r, &[], 3).unwrap();
    assert_eq!(build_cpn_extension(&empty).unwrap().group_rank, 0);

    let dep = kummer_rank(&r, &elems(&r, "t, t^4"), 3).unwrap();
    assert!(matches!(build_cpn_extension(&dep), Err(Error::NotCertified)));
    let rz = ring("Q(zeta4)(t)");
    let inc = kummer_rank(&rz, &elems(&rz, "3"), 2).unwrap();
    assert!(matches!(build_cpn_extension(&inc), Err(Error::NotCertified)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kummer_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, p, es) = random_kummer_system(&mut rng);
        let s = kummer_rank(&r, &es, p).unwrap();
        prop_assert!(s.is_exact());
        prop_assert!(s.verify());
        prop_assert_eq!(s.rank, brute_force_kummer_rank(&r, &es, p));
    }

    #[test]
    fn as_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, p, es) = random_as_system(&mut rng);
        let s = as_rank(&r, &es, p, AsStrategy::Auto).unwrap();
        prop_assert!(s.verify());
        prop_assert_eq!(s.rank, brute_force_as_rank(&r, &es, p));
    }

    #[test]
    fn scaling_invariance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, p, es) = random_kummer_system(&mut rng);
        let h = RatFunc::from_poly(random_poly(&r, &mut rng, 2));
        let mut scaled = es.clone();
        scaled[0] = scaled[0].mul(&h.pow(p));
        prop_assert_eq!(kummer_rank(&r, &es, p).unwrap().rank, kummer_rank(&r, &scaled, p).unwrap().rank);

        let (r, p, es) = random_as_system(&mut rng);
        let h = random_as_element(&r, &mut rng);
        let mut shifted = es.clone();
        shifted[0] = shifted[0].add(&wp(&h));
        prop_assert_eq!(
            as_rank(&r, &es, p, AsStrategy::Auto).unwrap().rank,
            as_rank(&r, &shifted, p, AsStrategy::Auto).unwrap().rank
        );
    }

    #[test]
    fn relative_rank_bounded_by_rank(cs in prop::collection::vec((0i64..7, 0i64..7, 0u32..3), 1..4)) {
        let r = ring("F7(t,u)");
        let es: Vec<RatFunc> = cs.iter().map(|&(a, b, e)| {
            parse_ratfunc(&r, &format!("(t+u+{a})^{}*(t*u+{b})*(t+{a})", e + 1)).unwrap()
        }).collect();
        let abs = kummer_rank(&r, &es, 3).unwrap();
        let rel = kummer_relative_rank(&r, &es, 3).unwrap();
        prop_assert!(rel.is_exact() && abs.is_exact());
        prop_assert!(rel.rank <= abs.rank);
        prop_assert!(rel.verify());
    }

    #[test]
    fn wp_solve_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring(["F2(t)", "F3(t)", "F4(t)"][(seed % 3) as usize]);
        let a = random_as_element(&r, &mut rng);
        let b = wp(&a);
        match wp_solve(&b).unwrap() {
            WpOutcome::Solved(x) => prop_assert_eq!(wp(&x), b),
            WpOutcome::NoSolution(_) => prop_assert!(false, "℘-image rejected"),
        }
        let c = random_as_element(&r, &mut rng);
        if let WpOutcome::NoSolution(o) = wp_solve(&c).unwrap() {
            prop_assert!(o.check(&c));
        }
    }
}
