use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};

/// Rational function field `K(t_1..t_m, u_1..u_n)` with the variables split
/// into a T-part and a U-part.
#[derive(Debug)]
pub struct FunctionFieldDescriptor {
    base: Field,
    vars: Vec<String>,
    n_t: usize,
}

pub type FunctionField = Arc<FunctionFieldDescriptor>;

impl PartialEq for FunctionFieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (*self.base == *other.base && self.vars == other.vars && self.n_t == other.n_t)
    }
}

impl Eq for FunctionFieldDescriptor {}

impl fmt::Display for FunctionFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{v}:{}", if i < self.n_t { "T" } else { "U" }))
            .collect();
        write!(f, "{}({} | {})", self.base.name(), self.vars.join(","), parts.join(" "))
    }
}

impl FunctionFieldDescriptor {
    pub fn new(base: &Field, t_vars: &[&str], u_vars: &[&str]) -> Result<FunctionField> {
        let vars: Vec<String> = t_vars.iter().chain(u_vars).map(|s| s.to_string()).collect();
        if vars.is_empty() {
            return Err(Error::InvalidArgument("function field needs a variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) || base.symbols().contains(&v.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate variable name `{v}`")));
            }
        }
        Ok(Arc::new(FunctionFieldDescriptor {
            base: base.clone(),
            vars,
            n_t: t_vars.len(),
        }))
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn t_vars(&self) -> &[String] {
        &self.vars[..self.n_t]
    }

    pub fn u_vars(&self) -> &[String] {
        &self.vars[self.n_t..]
    }

    pub fn is_t_var(&self, i: usize) -> bool {
        i < self.n_t
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}

/// Exponent vector, ordered graded-lexicographically (variable 0 is the
/// most significant).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in the variables of a [`FunctionField`].
#[derive(Clone)]
pub struct MultiPoly {
    ring: FunctionField,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl MultiPoly {
    pub fn zero(ring: &FunctionField) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &FunctionField, c: FieldElement) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; ring.nvars()]), c);
        }
        p
    }

    pub fn one(ring: &FunctionField) -> Self {
        Self::constant(ring, ring.base().one())
    }

    pub fn from_i64(ring: &FunctionField, n: i64) -> Self {
        Self::constant(ring, ring.base().from_i64(n))
    }

    pub fn var(ring: &FunctionField, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::from_terms(ring, vec![(Monomial(e), ring.base().one())])
    }

    pub fn var_by_name(ring: &FunctionField, name: &str) -> Option<Self> {
        ring.var_index(name).map(|i| Self::var(ring, i))
    }

    pub fn from_terms(ring: &FunctionField, terms: Vec<(Monomial, FieldElement)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get(&m) {
            Some(old) => {
                let s = old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &FunctionField {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.ring.base().zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Variables of positive degree.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.degree_in(i) > 0)
            .collect()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Leading coefficient under the graded lexicographic order.
    pub fn lc(&self) -> FieldElement {
        self.terms
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(|| self.ring.base().zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn mul_term(&self, mono: &Monomial, c: &FieldElement) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| {
                    (
                        Monomial(m.0.iter().zip(&mono.0).map(|(a, b)| a + b).collect()),
                        x * c,
                    )
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &other.terms {
            for (m2, c2) in self.mul_term(m, c).terms {
                out.add_term(m2, c2);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero"))
    }

    /// Exact quotient by leading-term division, or `None` if `divisor`
    /// does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.terms.iter().next_back()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ring);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if !lm.divides(m) {
                return None;
            }
            let qm = Monomial(m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect());
            let qc = c * &lc_inv;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`: `self = Σ c_k var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.ring); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(ring: &FunctionField, var: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut e = m.0.clone();
                e[var] += k as u32;
                out.add_term(Monomial(e), x.clone());
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let base = self.ring.base();
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[var] -= 1;
            out.add_term(Monomial(e), c * &base.from_u64(k as u64));
        }
        out
    }

    /// Substitutes a polynomial for one variable.
    pub fn substitute_var(&self, var: usize, value: &MultiPoly) -> Self {
        let coeffs = self.coeffs_in(var);
        coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.ring), |acc, c| acc.mul(value).add(c))
    }

    /// In characteristic `p`: `g` with `g^p = self`, when every exponent is
    /// divisible by `p` (finite base fields only).
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.ring.characteristic() as u32;
        if p == 0 {
            return None;
        }
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0.iter().any(|e| e % p != 0) {
                return None;
            }
            out.add_term(Monomial(m.0.iter().map(|e| e / p).collect()), c.pth_root()?);
        }
        Some(out)
    }

    /// Maps the polynomial into another ring with the same base and
    /// variables matched by name.
    pub fn rename_into(&self, target: &FunctionField) -> Result<Self> {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| Error::InvalidArgument(format!("variable {v} missing in {target}")))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), target.base().embed(c)?);
        }
        Ok(out)
    }

    pub(crate) fn same_ring(&self, other: &Self) -> Result<()> {
        if *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::ParentMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring.vars();
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
                .collect();
            let mono = mono.join("*");
            let mut cs = c.to_string();
            let neg = c.term_count() == 1 && cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if c.term_count() > 1 && !mono.is_empty() {
                cs = format!("({cs})");
            }
            let body = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            match (n, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}
