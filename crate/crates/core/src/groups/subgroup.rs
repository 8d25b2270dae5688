use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// Largest order [`subgroups`] accepts by default.
pub const DEFAULT_ORDER_BOUND: usize = 64;

/// A subgroup as a sorted member list of a parent group of known order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    /// Checks closure (identity, products, inverses).
    pub fn new(g: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.iter().any(|&x| x >= g.order()) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        if !set.contains(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            if let Some(&b) = set.iter().find(|&&b| !set.contains(&g.mul(a, b))) {
                return Err(Error::NotASubgroup(format!("{a}*{b} missing")));
            }
        }
        Ok(Self::unchecked(g, set.into_iter().collect()))
    }

    fn unchecked(g: &FiniteGroup, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        Subgroup {
            parent_order: g.order(),
            members,
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            for &s in gens {
                let y = g.mul(queue[i], s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        Self::unchecked(g, queue)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::unchecked(g, (0..g.order()).collect())
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::unchecked(g, vec![0])
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        Self::unchecked(g, self.members.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    /// The set `self·other`, a subgroup only when the factors permute.
    pub fn product_set(&self, g: &FiniteGroup, other: &Subgroup) -> BTreeSet<usize> {
        self.members
            .iter()
            .flat_map(|&a| other.members.iter().map(move |&b| g.mul(a, b)))
            .collect()
    }

    /// Whether `self·other` is all of `g`, by counting.
    pub fn product_is_whole(&self, g: &FiniteGroup, other: &Subgroup) -> bool {
        self.order() * other.order() == g.order() * self.intersect(g, other).order()
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|x| self.members.iter().all(|&n| self.contains(g.conjugate(x, n))))
    }

    /// Intersection of all conjugates.
    pub fn normal_core(&self, g: &FiniteGroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&n| (0..g.order()).all(|x| self.contains(g.conjugate(g.inv(x), n))))
            .collect();
        Self::unchecked(g, members)
    }

    /// Checks that this is a subgroup of `g` (same parent order and closed).
    pub fn check_in(&self, g: &FiniteGroup) -> Result<()> {
        if self.parent_order != g.order() {
            return Err(Error::NotASubgroup(format!(
                "subgroup of a group of order {}, not of {}",
                self.parent_order,
                g.name()
            )));
        }
        Subgroup::new(g, self.members.iter().copied()).map(|_| ())
    }
}

/// All subgroups of `g`, ordered by (size, members).
pub fn subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    subgroups_bounded(g, DEFAULT_ORDER_BOUND)
}

/// Every subgroup is a join of cyclic subgroups: start from the cyclic
/// ones and join with cyclic subgroups until nothing new appears.
pub fn subgroups_bounded(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded {
            order: g.order(),
            bound,
        });
    }
    let cyclic: BTreeSet<Subgroup> = (0..g.order()).map(|x| Subgroup::generated(g, &[x])).collect();
    // a generator for each cyclic subgroup
    let cyclic_gens: Vec<(usize, Subgroup)> = cyclic
        .iter()
        .map(|c| {
            let x = *c.members.iter().find(|&&x| g.element_order(x) == c.order()).unwrap();
            (x, c.clone())
        })
        .collect();
    let mut all: BTreeSet<Subgroup> = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.into_iter().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for (x, c) in &cyclic_gens {
                if c.is_subset(h) {
                    continue;
                }
                let j = join(g, h, *x);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(all.into_iter().collect())
}

/// `<h, x>`, grown from `h` by multiplying with `x` and members of `h`.
fn join(g: &FiniteGroup, h: &Subgroup, x: usize) -> Subgroup {
    let mut gens: Vec<usize> = h.members.iter().copied().filter(|&m| m != 0).collect();
    gens.push(x);
    Subgroup::generated(g, &gens)
}
