use std::collections::{BTreeMap, HashSet};

use socle_lab::groups::*;
use socle_lab::Error;

fn order_profile(g: &FiniteGroup) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for x in 0..g.order() {
        *m.entry(g.element_order(x)).or_insert(0) += 1;
    }
    m
}

/// Isomorphism invariants, enough to separate the catalog groups of equal
/// order.
fn fingerprint(g: &FiniteGroup) -> String {
    let subs = subgroups(g).unwrap();
    let normal = subs.iter().filter(|s| s.is_normal(g)).count();
    let center = (0..g.order())
        .filter(|&z| (0..g.order()).all(|x| g.mul(x, z) == g.mul(z, x)))
        .count();
    let comms: Vec<usize> = (0..g.order())
        .flat_map(|a| (0..g.order()).map(move |b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    let derived = Subgroup::generated(g, &comms).order();
    let profile: Vec<usize> = subs.iter().map(|s| order_profile_key(g, s)).collect();
    let mut profile = profile;
    profile.sort_unstable();
    format!(
        "{:?} subs={} normal={normal} center={center} derived={derived} {:?}",
        order_profile(g),
        subs.len(),
        profile
    )
}

/// Order and exponent of a subgroup, packed.
fn order_profile_key(g: &FiniteGroup, s: &Subgroup) -> usize {
    let exp = s.members().iter().map(|&x| g.element_order(x)).max().unwrap();
    s.order() * 1000 + exp
}

fn known_count(order: usize) -> usize {
    [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15][order]
}

#[test]
fn catalog_has_every_small_group_once() {
    let mut seen: BTreeMap<usize, HashSet<String>> = BTreeMap::new();
    for name in NAMES {
        let g = catalog(name).unwrap();
        assert_eq!(g.name(), *name);
        if g.order() <= 24 {
            let fresh = seen.entry(g.order()).or_default().insert(fingerprint(&g));
            assert!(fresh, "{name} repeats an earlier group of order {}", g.order());
        }
    }
    for n in 1..=24 {
        assert_eq!(seen[&n].len(), known_count(n), "order {n}");
    }
}

#[test]
fn catalog_entries_and_aliases() {
    assert_eq!(catalog("C4").unwrap().order(), 4);
    assert!(catalog("C4").unwrap().is_abelian());
    assert_eq!(catalog("D4").unwrap().name(), "D8");
    assert_eq!(catalog("F20").unwrap().order(), 20);
    for (name, order) in [("C25", 25), ("C5xC5", 25), ("C49", 49), ("C7xC7", 49), ("SL(2,3)", 24)] {
        assert_eq!(catalog(name).unwrap().order(), order);
    }
    assert!(matches!(catalog("nope"), Err(Error::InvalidArgument(_))));
}

#[test]
fn f20_from_root_permutations() {
    let g = load_group("F20 = perm: 20 (1 2 3 4 5); (2 3 5 4)").unwrap();
    assert_eq!(g.order(), 20);
    assert_eq!(fingerprint(&g), fingerprint(&catalog("F20").unwrap()));
    assert!(load_group("perm: 10 (1 2 3 4 5); (2 3 5 4)").is_err());
}

#[test]
fn table_entries_and_failures() {
    let g = load_group("table: 3 0 1 2 1 2 0 2 0 1").unwrap();
    assert_eq!(fingerprint(&g), fingerprint(&catalog("C3").unwrap()));
    // a Latin square with identity 0 that is not associative
    let bad = "table: 5 0 1 2 3 4 1 0 3 4 2 2 4 0 1 3 3 2 4 0 1 4 3 1 2 0";
    match load_group(bad) {
        Err(Error::NotAGroup(msg)) => assert!(msg.contains('≠'), "{msg}"),
        other => panic!("expected NotAGroup, got {other:?}"),
    }
    assert!(matches!(load_group("table: 2 0 1 1 1"), Err(Error::NotAGroup(_))));
    assert!(matches!(load_group("table: 2 0 1 1"), Err(Error::Parse { .. })));
    let file = "# two groups\nC4\nK = table: 2 0 1 1 0\n";
    let gs = load_catalog_file(file).unwrap();
    assert_eq!(gs.iter().map(|g| g.order()).collect::<Vec<_>>(), vec![4, 2]);
}

#[test]
fn subgroup_counts() {
    for (name, count) in [
        ("C1", 1),
        ("C4", 3),
        ("Q8", 6),
        ("S3", 6),
        ("D8", 10),
        ("C2xC2xC2", 16),
        ("A4", 10),
        ("F20", 14),
        ("SL(2,3)", 15),
        ("S4", 30),
        ("C2xC2xC2xC2", 67),
        ("C5xC5", 8),
    ] {
        let subs = subgroups(&catalog(name).unwrap()).unwrap();
        assert_eq!(subs.len(), count, "{name}");
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
    }
    let big = FiniteGroup::cyclic(65);
    assert!(matches!(subgroups(&big), Err(Error::OrderBoundExceeded { .. })));
    assert_eq!(subgroups_bounded(&big, 100).unwrap().len(), 4);
}

#[test]
fn frattini_examples() {
    let c2n = catalog("C2xC2xC2").unwrap();
    let f = frattini_p(&c2n, 2).unwrap();
    assert_eq!((f.phi.order(), f.quotient_rank, f.cross_check), (1, 3, Some(true)));

    let c4 = catalog("C4").unwrap();
    let f = frattini_p(&c4, 2).unwrap();
    assert_eq!(f.phi.members(), &[0, 2]);
    assert_eq!(f.quotient_rank, 1);

    let q8 = catalog("Q8").unwrap();
    let f = frattini_p(&q8, 2).unwrap();
    let minus_one = (1..8).find(|&x| q8.element_order(x) == 2).unwrap();
    assert_eq!(f.phi.members(), &[0, minus_one]);
    assert_eq!((f.quotient_rank, f.cross_check), (2, Some(true)));

    // no index-3 normal subgroup: the empty intersection
    let f = frattini_p(&q8, 3).unwrap();
    assert_eq!((f.phi.order(), f.quotient_rank), (8, 0));
    assert!(matches!(frattini_p(&q8, 4), Err(Error::NotPrime(4))));
}

#[test]
fn frattini_cross_check_on_catalog() {
    for name in NAMES {
        let g = catalog(name).unwrap();
        for p in [2, 3, 5, 7] {
            let f = frattini_p(&g, p).unwrap();
            assert_eq!(f.cross_check, Some(true), "{name} p={p}");
            assert_eq!((p as usize).pow(f.quotient_rank as u32), f.phi.index());
        }
    }
}

#[test]
fn relative_frattini_examples() {
    let v = catalog("C2xC2").unwrap();
    let first = Subgroup::new(&v, [0, 2]).unwrap();
    let r = relative_frattini(&v, &first, 2).unwrap();
    assert_eq!(r.subgroup, first);
    assert_eq!(r.cross_check, Some(true));
    let g = catalog("D8").unwrap();
    let whole = Subgroup::whole(&g);
    assert_eq!(relative_frattini(&g, &whole, 2).unwrap().subgroup, whole);
    let triv = Subgroup::trivial(&g);
    assert_eq!(relative_frattini(&g, &triv, 2).unwrap().subgroup, frattini_p(&g, 2).unwrap().phi);
    let foreign = Subgroup::new(&v, [0, 1]).unwrap();
    assert!(matches!(relative_frattini(&g, &foreign, 2), Err(Error::NotASubgroup(_))));
}

#[test]
fn relative_frattini_properties() {
    for name in NAMES.iter().filter(|n| catalog(n).unwrap().order() <= 16) {
        let g = catalog(name).unwrap();
        let subs = subgroups(&g).unwrap();
        for p in [2, 3] {
            let phi = frattini_p(&g, p).unwrap().phi;
            let rel: Vec<Subgroup> = subs
                .iter()
                .map(|h| {
                    let r = relative_frattini(&g, h, p).unwrap();
                    assert_eq!(r.cross_check, Some(true), "{name} {h:?}");
                    assert!(h.is_subset(&r.subgroup) && phi.is_subset(&r.subgroup));
                    r.subgroup
                })
                .collect();
            for (i, h) in subs.iter().enumerate() {
                for (j, k) in subs.iter().enumerate() {
                    if h.is_subset(k) {
                        assert!(rel[i].is_subset(&rel[j]), "{name}: monotonicity");
                    }
                }
            }
        }
    }
}

fn product_subgroup(g: &FiniteGroup, a: &Subgroup, b: &Subgroup, m: usize) -> Subgroup {
    Subgroup::new(g, a.members().iter().flat_map(|&x| b.members().iter().map(move |&y| x * m + y))).unwrap()
}

#[test]
fn frattini_of_products() {
    let small: Vec<FiniteGroup> = NAMES
        .iter()
        .map(|n| catalog(n).unwrap())
        .filter(|g| g.order() <= 8)
        .collect();
    for a in &small {
        for b in &small {
            let ab = FiniteGroup::direct_product(a, b);
            for p in [2, 3] {
                let lhs = frattini_p(&ab, p).unwrap().phi;
                let rhs = product_subgroup(
                    &ab,
                    &frattini_p(a, p).unwrap().phi,
                    &frattini_p(b, p).unwrap().phi,
                    b.order(),
                );
                assert_eq!(lhs, rhs, "{} x {}", a.name(), b.name());
            }
        }
    }
}

#[test]
fn basis_theorem_on_p_groups() {
    for name in NAMES {
        let g = catalog(name).unwrap();
        let Some(p) = [2u64, 3, 5, 7].into_iter().find(|&p| {
            let mut n = g.order();
            while n.is_multiple_of(p as usize) {
                n /= p as usize;
            }
            n == 1 && g.order() > 1
        }) else {
            continue;
        };
        let phi = frattini_p(&g, p).unwrap().phi;
        for h in subgroups(&g).unwrap() {
            if h.product_set(&g, &phi).len() == g.order() {
                assert_eq!(h.order(), g.order(), "{name}");
            }
        }
    }
}

#[test]
fn socle_equation_examples() {
    let a = catalog("S3").unwrap();
    let b = catalog("C4").unwrap();
    let g = FiniteGroup::direct_product(&a, &b);
    let n = product_subgroup(&g, &Subgroup::whole(&a), &Subgroup::trivial(&b), 4);
    let h = product_subgroup(&g, &Subgroup::trivial(&a), &Subgroup::whole(&b), 4);
    for p in [2, 3] {
        let c = verify_socle_equation(&g, &n, &h, p).unwrap();
        assert!(c.core_product);
        assert_eq!(c.verdict(), Verdict::Holds);
    }
    let whole = Subgroup::whole(&g);
    assert_eq!(verify_socle_equation(&g, &whole, &whole, 2).unwrap().verdict(), Verdict::Holds);
    assert_eq!(
        verify_socle_equation(&g, &n, &n, 2).unwrap().verdict(),
        Verdict::HypothesisNotMet
    );

    let f20 = catalog("F20").unwrap();
    let subs = subgroups(&f20).unwrap();
    let c5 = subs.iter().find(|s| s.order() == 5).unwrap();
    let stab = subs.iter().find(|s| s.order() == 4).unwrap();
    let c = verify_socle_equation(&f20, stab, c5, 2).unwrap();
    assert!(c.product && !c.core_product);
    assert_eq!(stab.normal_core(&f20).order(), 1);
    let outcome = c.outcome.clone().unwrap();
    // F20/F20' = C4, so Φ²(F20) is the index-2 subgroup D10
    assert_eq!(c.lhs.order(), 10);
    assert_eq!(c.rhs.order(), 10);
    assert_eq!(outcome, EquationOutcome::Holds);
}

#[test]
fn explorer() {
    assert!(explore_counterexamples(1, 2).unwrap().is_empty());
    assert!(matches!(
        explore_counterexamples(65, 2),
        Err(Error::OrderBoundExceeded { .. })
    ));
    let recs = explore_counterexamples(8, 2).unwrap();
    assert!(!recs.is_empty());
    let again = explore_counterexamples(8, 2).unwrap();
    assert_eq!(recs, again);
    for r in &recs {
        let g = catalog(&r.group).unwrap();
        let c = verify_socle_equation(&g, &r.n, &r.h, 2).unwrap();
        assert_eq!(c, r.check);
        assert!(c.product && !c.core_product);
    }
}
