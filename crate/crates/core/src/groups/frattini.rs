use rayon::prelude::*;

use super::catalog::{catalog, NAMES};
use super::group::FiniteGroup;
use super::subgroup::{subgroups, Subgroup, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frattini {
    pub phi: Subgroup,
    /// `n` with `G/Φ ≅ C_p^n`.
    pub quotient_rank: usize,
    /// Agreement with the intersection of index-`p` normal subgroups, when
    /// the subgroups could be enumerated.
    pub cross_check: Option<bool>,
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn log_p(mut n: usize, p: u64) -> usize {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p as usize, 0);
        n /= p as usize;
        k += 1;
    }
    k
}

/// `<[a, b], a^p>`.
pub fn frattini_generated(g: &FiniteGroup, p: u64) -> Subgroup {
    let n = g.order();
    let mut gens: Vec<usize> = (0..n).map(|a| g.pow(a, p)).collect();
    gens.extend((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.commutator(a, b)));
    gens.sort_unstable();
    gens.dedup();
    gens.retain(|&x| x != 0);
    Subgroup::generated(g, &gens)
}

/// Normal subgroups of index `p` among `subs`.
fn index_p_normal<'a>(g: &'a FiniteGroup, subs: &'a [Subgroup], p: u64) -> impl Iterator<Item = &'a Subgroup> {
    subs.iter().filter(move |s| s.index() == p as usize && s.is_normal(g))
}

/// Intersection of the index-`p` normal subgroups containing `h`; `G` when
/// there are none.
pub fn frattini_intersection(g: &FiniteGroup, subs: &[Subgroup], h: &Subgroup, p: u64) -> Subgroup {
    index_p_normal(g, subs, p)
        .filter(|s| h.is_subset(s))
        .fold(Subgroup::whole(g), |acc, s| acc.intersect(g, s))
}

pub fn frattini_p(g: &FiniteGroup, p: u64) -> Result<Frattini> {
    check_prime(p)?;
    let phi = frattini_generated(g, p);
    let quotient_rank = log_p(phi.index(), p);
    let cross_check = (g.order() <= DEFAULT_ORDER_BOUND).then(|| {
        let subs = subgroups(g).expect("within bound");
        frattini_intersection(g, &subs, &Subgroup::trivial(g), p) == phi
    });
    Ok(Frattini {
        phi,
        quotient_rank,
        cross_check,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeFrattini {
    /// `H·Φ^p(G)`.
    pub subgroup: Subgroup,
    pub cross_check: Option<bool>,
}

/// `Φ^p(G, H) = H·Φ^p(G)`.
pub fn relative_frattini(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<RelativeFrattini> {
    check_prime(p)?;
    h.check_in(g)?;
    let phi = frattini_generated(g, p);
    let subgroup = relative_with(g, h, &phi);
    let cross_check = (g.order() <= DEFAULT_ORDER_BOUND).then(|| {
        let subs = subgroups(g).expect("within bound");
        frattini_intersection(g, &subs, h, p) == subgroup
    });
    Ok(RelativeFrattini { subgroup, cross_check })
}

fn relative_with(g: &FiniteGroup, h: &Subgroup, phi: &Subgroup) -> Subgroup {
    Subgroup::new(g, h.product_set(g, phi)).expect("H·Φ is a subgroup since Φ is normal")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquationOutcome {
    Holds,
    /// An element of `Φ(G,N) ∩ Φ(G,H)` outside `Φ(G,N∩H)`.
    Fails { witness: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(usize),
    HypothesisNotMet,
}

/// Both sides of `Φ^p(G, N∩H) = Φ^p(G, N) ∩ Φ^p(G, H)` and the hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleCheck {
    /// `N′·H = G` with `N′` the normal core of `N`.
    pub core_product: bool,
    /// `N·H = G`.
    pub product: bool,
    pub lhs: Subgroup,
    pub rhs: Subgroup,
    /// Evaluated whenever `N·H = G`.
    pub outcome: Option<EquationOutcome>,
}

impl SocleCheck {
    pub fn verdict(&self) -> Verdict {
        match &self.outcome {
            Some(EquationOutcome::Holds) => Verdict::Holds,
            Some(EquationOutcome::Fails { witness }) => Verdict::Fails(*witness),
            None => Verdict::HypothesisNotMet,
        }
    }

    /// A failure under the core hypothesis would contradict the theorem,
    /// so it can only mean an implementation error.
    pub fn is_implementation_error(&self) -> bool {
        self.core_product && matches!(self.outcome, Some(EquationOutcome::Fails { .. }))
    }
}

pub fn verify_socle_equation(g: &FiniteGroup, n: &Subgroup, h: &Subgroup, p: u64) -> Result<SocleCheck> {
    check_prime(p)?;
    n.check_in(g)?;
    h.check_in(g)?;
    let phi = frattini_generated(g, p);
    Ok(socle_check(g, n, h, &phi))
}

fn socle_check(g: &FiniteGroup, n: &Subgroup, h: &Subgroup, phi: &Subgroup) -> SocleCheck {
    let core_product = n.normal_core(g).product_is_whole(g, h);
    let product = n.product_is_whole(g, h);
    let lhs = relative_with(g, &n.intersect(g, h), phi);
    let rhs = relative_with(g, n, phi).intersect(g, &relative_with(g, h, phi));
    let outcome = product.then(|| match rhs.members().iter().find(|&&x| !lhs.contains(x)) {
        None => EquationOutcome::Holds,
        Some(&witness) => EquationOutcome::Fails { witness },
    });
    SocleCheck {
        core_product,
        product,
        lhs,
        rhs,
        outcome,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreRecord {
    pub group: String,
    pub order: usize,
    pub n: Subgroup,
    pub h: Subgroup,
    pub check: SocleCheck,
}

/// Every catalog pair `(N, H)` with `N·H = G` but `N′·H ≠ G`, evaluated,
/// in catalog and subgroup order.
pub fn explore_counterexamples(max_order: usize, p: u64) -> Result<Vec<ExploreRecord>> {
    let groups = NAMES.iter().map(|n| catalog(n)).collect::<Result<Vec<_>>>()?;
    explore_groups(&groups, max_order, p)
}

/// As [`explore_counterexamples`] over an explicit list of groups.
pub fn explore_groups(groups: &[FiniteGroup], max_order: usize, p: u64) -> Result<Vec<ExploreRecord>> {
    check_prime(p)?;
    if max_order > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded {
            order: max_order,
            bound: DEFAULT_ORDER_BOUND,
        });
    }
    let groups: Vec<&FiniteGroup> = groups.iter().filter(|g| g.order() <= max_order).collect();
    let per_group: Vec<Vec<ExploreRecord>> = groups
        .par_iter()
        .map(|g| {
            let subs = subgroups(g).expect("within bound");
            let phi = frattini_generated(g, p);
            let mut out = Vec::new();
            for n in &subs {
                for h in &subs {
                    if !n.product_is_whole(g, h) || n.normal_core(g).product_is_whole(g, h) {
                        continue;
                    }
                    out.push(ExploreRecord {
                        group: g.name().to_string(),
                        order: g.order(),
                        n: n.clone(),
                        h: h.clone(),
                        check: socle_check(g, n, h, &phi),
                    });
                }
            }
            out
        })
        .collect();
    Ok(per_group.into_iter().flatten().collect())
}
