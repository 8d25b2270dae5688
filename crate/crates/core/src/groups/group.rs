use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest order whose associativity is checked on every triple.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;
/// Largest group built by closure.
pub const CLOSURE_LIMIT: usize = 5_000;

/// A finite group given by its Cayley table; element 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<u32>>,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    /// Verifies the table: closure, identity at 0, inverses, associativity
    /// (every triple up to order 64, a fixed random sample beyond).
    pub fn from_table(name: &str, table: Vec<Vec<u32>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if let Some(i) = table.iter().position(|r| r.len() != n || r.iter().any(|&x| x as usize >= n)) {
            return Err(Error::NotAGroup(format!("row {i} is not a row of indices below {n}")));
        }
        for a in 0..n {
            if table[0][a] as usize != a || table[a][0] as usize != a {
                return Err(Error::NotAGroup(format!("0 is not an identity: 0*{a} or {a}*0 differs from {a}")));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) else {
                return Err(Error::NotAGroup(format!("{a} has no inverse")));
            };
            inverse[a] = b;
        }
        let assoc = |a: usize, b: usize, c: usize| {
            table[table[a][b] as usize][c] == table[a][table[b][c] as usize]
        };
        let failing = if n <= EXHAUSTIVE_ASSOCIATIVITY {
            (0..n)
                .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
                .find(|&(a, b, c)| !assoc(a, b, c))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..20_000)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .find(|&(a, b, c)| !assoc(a, b, c))
        };
        if let Some((a, b, c)) = failing {
            return Err(Error::NotAGroup(format!("({a}*{b})*{c} ≠ {a}*({b}*{c})")));
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            inverse,
        })
    }

    /// The group generated by `gens` under `mul`, elements numbered in
    /// breadth-first order from the identity.
    pub fn from_closure<T: Clone + Eq + Hash>(
        name: &str,
        identity: T,
        gens: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = mul(&elems[i], g);
                if !index.contains_key(&x) {
                    if elems.len() == CLOSURE_LIMIT {
                        return Err(Error::OrderBoundExceeded {
                            order: CLOSURE_LIMIT + 1,
                            bound: CLOSURE_LIMIT,
                        });
                    }
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&mul(a, b)] as u32).collect())
            .collect();
        Self::from_table(name, table)
    }

    /// Permutation group on `0..degree`; `(a·b)(x) = b(a(x))`.
    pub fn from_permutations(name: &str, degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::NotAGroup(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        Self::from_closure(name, id, gens, |a, b| a.iter().map(|&x| b[x]).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let m = h.order();
        let n = g.order() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (g.mul(x / m, y / m) * m + h.mul(x % m, y % m)) as u32)
                    .collect()
            })
            .collect();
        FiniteGroup {
            name: format!("{}x{}", g.name, h.name),
            table,
            inverse: (0..n).map(|x| g.inv(x / m) * m + h.inv(x % m)).collect(),
        }
    }

    /// Extends `gens[i] ↦ images[i]` to an endomorphism, failing when the
    /// assignment is not a well-defined homomorphism.
    pub fn extend_hom(&self, gens: &[usize], images: &[usize]) -> Result<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&g, &im) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = self.mul(map[x], im);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return Err(Error::InvalidArgument("generator images do not define a homomorphism".into()));
                }
            }
            i += 1;
        }
        if queue.len() != n {
            return Err(Error::InvalidArgument("elements do not generate the group".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if map[self.mul(a, b)] != self.mul(map[a], map[b]) {
                    return Err(Error::InvalidArgument("generator images do not define a homomorphism".into()));
                }
            }
        }
        Ok(map)
    }

    /// `N ⋊ C_k`, the generator of `C_k` acting by the automorphism `phi`.
    /// Elements `(x, j)` are numbered `j·|N| + x`.
    pub fn semidirect_cyclic(name: &str, n_grp: &FiniteGroup, k: usize, phi: &[usize]) -> Result<Self> {
        let m = n_grp.order();
        let mut powers = vec![(0..m).collect::<Vec<usize>>()];
        for j in 1..k {
            powers.push(powers[j - 1].iter().map(|&x| phi[x]).collect());
        }
        if powers[k - 1].iter().map(|&x| phi[x]).enumerate().any(|(i, y)| i != y) {
            return Err(Error::InvalidArgument(format!("automorphism order does not divide {k}")));
        }
        let n = m * k;
        let table = (0..n)
            .map(|a| {
                let (x, j) = (a % m, a / m);
                (0..n)
                    .map(|b| {
                        let (y, l) = (b % m, b / m);
                        (((j + l) % k) * m + n_grp.mul(x, powers[j][y])) as u32
                    })
                    .collect()
            })
            .collect();
        Self::from_table(name, table)
    }

    /// `<a, b | a^m, b^n = a^s, b a b^{-1} = a^r>`, elements `a^i b^j`
    /// numbered `j·m + i`.
    pub fn metacyclic(name: &str, m: usize, n: usize, r: usize, s: usize) -> Result<Self> {
        let rpow: Vec<usize> = (0..n)
            .scan(1usize, |acc, _| {
                let v = *acc;
                *acc = *acc * r % m;
                Some(v)
            })
            .collect();
        let size = m * n;
        let table = (0..size)
            .map(|x| {
                let (i, j) = (x % m, x / m);
                (0..size)
                    .map(|y| {
                        let (k, l) = (y % m, y / m);
                        let wrap = if j + l >= n { s } else { 0 };
                        let e = (i + k * rpow[j] + wrap) % m;
                        (((j + l) % n) * m + e) as u32
                    })
                    .collect()
            })
            .collect();
        Self::from_table(name, table)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::metacyclic(&format!("C{n}"), n, 1, 1, 0).expect("cyclic group")
    }
}

/// Parses 1-based cycle notation such as `(1 2 3)(4 5)` into a permutation
/// of `0..degree`.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let bad = |m: &str| Error::Parse {
        line: 1,
        column: 1,
        message: format!("{m} in cycle notation {text:?}"),
    };
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = open.find(')').ok_or_else(|| bad("missing ')'"))?;
        let pts: Vec<usize> = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
            .collect::<Result<_>>()?;
        if pts.iter().any(|&x| x == 0 || x > degree) {
            return Err(bad("point out of range"));
        }
        // compose this cycle after what we have so far
        let mut cyc: Vec<usize> = (0..degree).collect();
        for w in 0..pts.len() {
            cyc[pts[w] - 1] = pts[(w + 1) % pts.len()] - 1;
        }
        perm = perm.iter().map(|&x| cyc[x]).collect();
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}
