use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::{FieldElement, Repr};
use super::irreducible::{certify_irreducible, Irreducibility};
use super::tower::{Level, ModOps, RatOps, Tower};
use super::unipoly::UniPoly;
use super::cyclotomic::cyclotomic_polynomial;
use crate::arith::{euler_phi, factor_u64, is_prime};
use crate::error::{Error, Result};

/// Shared handle to an immutable field descriptor.
pub type Field = Arc<FieldDescriptor>;

/// Largest extension field (by number of elements) that gets log tables.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

/// How a tower step came about; drives the canonical name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOrigin {
    Cyclotomic(u64),
    FiniteField { p: u64, k: u32 },
    Explicit,
}

#[derive(Debug, Clone)]
pub struct TowerStep {
    pub symbol: String,
    /// Monic minimal polynomial over `below`.
    pub minpoly: UniPoly,
    pub below: Field,
    pub origin: StepOrigin,
    pub certificate: Irreducibility,
}

impl TowerStep {
    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }
}

/// Options for [`FieldDescriptor::extend`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ExtendOptions {
    /// Accept a minimal polynomial whose irreducibility cannot be
    /// certified, recording the assertion in the descriptor.
    pub allow_assertion: bool,
}

pub(crate) struct PackedInfo {
    pub p: u64,
    pub k: usize,
    /// `None` for prime fields, where arithmetic is direct.
    pub tables: Option<Tables>,
}

pub(crate) struct Tables {
    pub log: Vec<u32>,
    pub exp: Vec<u32>,
}

pub(crate) enum Arith {
    Rational(Tower<RatOps>),
    Modular {
        tower: Tower<ModOps>,
        packed: Option<PackedInfo>,
    },
}

/// An exact computable field: the rationals or a prime field, extended by a
/// tower of simple algebraic extensions.
pub struct FieldDescriptor {
    base: BaseField,
    steps: Vec<TowerStep>,
    name: String,
    pub(crate) arith: Arith,
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.name)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.name == other.name
    }
}

impl Eq for FieldDescriptor {}

pub fn rationals() -> Field {
    Arc::new(FieldDescriptor {
        base: BaseField::Rationals,
        steps: Vec::new(),
        name: "Q".into(),
        arith: Arith::Rational(Tower::new(RatOps)),
    })
}

pub fn prime_field(p: u64) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(Arc::new(FieldDescriptor {
        base: BaseField::Prime(p),
        steps: Vec::new(),
        name: format!("Fp({p})"),
        arith: Arith::Modular {
            tower: Tower::new(ModOps(p)),
            packed: Some(PackedInfo {
                p,
                k: 1,
                tables: None,
            }),
        },
    }))
}

/// `Q(zeta_n)`, the rationals extended by the `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Result<Field> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic index must be positive".into()));
    }
    let q = rationals();
    if euler_phi(n) == 1 {
        return Ok(q);
    }
    let minpoly = cyclotomic_polynomial(&q, n);
    Ok(q.push_step(TowerStep {
        symbol: format!("zeta{n}"),
        minpoly,
        below: q.clone(),
        origin: StepOrigin::Cyclotomic(n),
        certificate: Irreducibility::Cyclotomic,
    }))
}

/// The field with `p^k` elements, generated over `F_p` by `symbol`, a root
/// of the first primitive monic polynomial of degree `k` (coefficient
/// vectors enumerated in base-`p` order).
pub fn finite_field(p: u64, k: u32, symbol: &str) -> Result<Field> {
    let fp = prime_field(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    if k == 1 {
        return Ok(fp);
    }
    let q = p
        .checked_pow(k)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{k} is too large")))?;
    let order_factors: Vec<u64> = factor_u64(q - 1).into_iter().map(|(l, _)| l).collect();
    let ops = ModOps(p);
    for idx in 0..p.pow(k) {
        // low coefficients m_0..m_{k-1} from the base-p digits of idx
        let mut digits = Vec::with_capacity(k as usize);
        let mut r = idx;
        for _ in 0..k {
            digits.push(r % p);
            r /= p;
        }
        if digits[0] == 0 {
            continue;
        }
        let mut tower = Tower::new(ops);
        tower.levels.push(Level {
            degree: k as usize,
            sub_dim: 1,
            minpoly: digits.iter().map(|&d| vec![d]).collect(),
        });
        let mut x = tower.zero();
        x[1] = 1;
        let one = tower.one();
        if tower.pow(&x, q - 1) != one {
            continue;
        }
        if order_factors
            .iter()
            .any(|l| tower.pow(&x, (q - 1) / l) == one)
        {
            continue;
        }
        let mut coeffs: Vec<FieldElement> =
            digits.iter().map(|&d| fp.from_u64(d)).collect();
        coeffs.push(fp.one());
        let minpoly = UniPoly::new(&fp, coeffs);
        let certificate = certify_irreducible(&minpoly)?;
        return Ok(fp.push_step(TowerStep {
            symbol: symbol.to_string(),
            minpoly,
            below: fp.clone(),
            origin: StepOrigin::FiniteField { p, k },
            certificate,
        }));
    }
    Err(Error::InvalidArgument(format!(
        "no primitive polynomial of degree {k} over F_{p}"
    )))
}

fn valid_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FieldDescriptor {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn characteristic(&self) -> u64 {
        match self.base {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => p,
        }
    }

    pub fn steps(&self) -> &[TowerStep] {
        &self.steps
    }

    /// Degree over the prime (or rational) base.
    pub fn total_degree(&self) -> usize {
        self.steps.iter().map(|s| s.degree()).product()
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements, when finite and representable.
    pub fn order(&self) -> Option<u64> {
        let p = self.characteristic();
        if p == 0 {
            return None;
        }
        p.checked_pow(self.total_degree() as u32)
    }

    /// Whether any step rests on an uncertified caller assertion.
    pub fn has_assertions(&self) -> bool {
        self.steps
            .iter()
            .any(|s| s.certificate == Irreducibility::Asserted)
    }

    pub fn symbols(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.symbol.as_str()).collect()
    }

    /// The prime field or `Q` at the bottom of the tower.
    pub fn base_field(&self) -> Field {
        match self.steps.first() {
            Some(s) => s.below.clone(),
            None => match self.base {
                BaseField::Rationals => rationals(),
                BaseField::Prime(p) => prime_field(p).expect("prime"),
            },
        }
    }

    /// Dimension of the `level`-th field of the tower (level 0 is the base).
    pub(crate) fn level_dim(&self, level: usize) -> usize {
        self.steps[..level].iter().map(|s| s.degree()).product()
    }

    pub(crate) fn packed(&self) -> Option<&PackedInfo> {
        match &self.arith {
            Arith::Modular { packed, .. } => packed.as_ref(),
            _ => None,
        }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        match &self.arith {
            Arith::Rational(t) => FieldElement::from_repr(self, Repr::Rat(t.zero())),
            Arith::Modular { tower, packed } => match packed {
                Some(_) => FieldElement::from_repr(self, Repr::Packed(0)),
                None => FieldElement::from_repr(self, Repr::Mod(tower.zero())),
            },
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_u64(self: &Arc<Self>, n: u64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self: &Arc<Self>, n: &BigInt) -> FieldElement {
        match self.base {
            BaseField::Rationals => self.from_rational(&BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let mut c = vec![0u64; self.total_degree()];
                c[0] = crate::arith::bigint_mod(n, p);
                self.from_mod_coords(c)
            }
        }
    }

    /// Embeds a rational; in positive characteristic the denominator must
    /// be invertible.
    pub fn from_rational(self: &Arc<Self>, r: &BigRational) -> FieldElement {
        match &self.arith {
            Arith::Rational(t) => {
                let mut c = t.zero();
                c[0] = r.clone();
                FieldElement::from_repr(self, Repr::Rat(c))
            }
            Arith::Modular { .. } => {
                let num = self.from_bigint(r.numer());
                let den = self.from_bigint(r.denom());
                num.try_div(&den).expect("denominator invertible in this characteristic")
            }
        }
    }

    pub fn from_rational_coords(self: &Arc<Self>, coords: Vec<BigRational>) -> Result<FieldElement> {
        match &self.arith {
            Arith::Rational(t) if coords.len() == t.dim() => {
                Ok(FieldElement::from_repr(self, Repr::Rat(coords)))
            }
            _ => Err(Error::InvalidArgument(format!(
                "coordinate vector does not fit {}",
                self.name
            ))),
        }
    }

    /// Builds an element from coordinates over `F_p` (reduced mod p).
    pub fn from_mod_coords(self: &Arc<Self>, mut coords: Vec<u64>) -> FieldElement {
        let p = self.characteristic();
        assert!(p != 0, "modular coordinates in characteristic 0");
        for c in coords.iter_mut() {
            *c %= p;
        }
        match &self.arith {
            Arith::Modular { packed: Some(info), .. } => {
                FieldElement::from_repr(self, Repr::Packed(encode(&coords, info.p)))
            }
            Arith::Modular { .. } => FieldElement::from_repr(self, Repr::Mod(coords)),
            Arith::Rational(_) => unreachable!(),
        }
    }

    /// Generator of tower step `level` (0-based), embedded in this field.
    pub fn generator(self: &Arc<Self>, level: usize) -> FieldElement {
        let idx = self.level_dim(level);
        self.basis_element(idx)
    }

    pub fn generator_by_symbol(self: &Arc<Self>, symbol: &str) -> Option<FieldElement> {
        self.steps
            .iter()
            .position(|s| s.symbol == symbol)
            .map(|i| self.generator(i))
    }

    /// The `idx`-th element of the tower monomial basis.
    pub fn basis_element(self: &Arc<Self>, idx: usize) -> FieldElement {
        let n = self.total_degree();
        match self.base {
            BaseField::Rationals => {
                let mut c = vec![BigRational::zero(); n];
                c[idx] = BigRational::one();
                FieldElement::from_repr(self, Repr::Rat(c))
            }
            BaseField::Prime(_) => {
                let mut c = vec![0u64; n];
                c[idx] = 1;
                self.from_mod_coords(c)
            }
        }
    }

    pub fn basis(self: &Arc<Self>) -> Vec<FieldElement> {
        (0..self.total_degree()).map(|i| self.basis_element(i)).collect()
    }

    /// Exponents of the tower generators in basis monomial `idx`.
    pub fn basis_exponents(&self, mut idx: usize) -> Vec<usize> {
        self.steps
            .iter()
            .map(|s| {
                let e = idx % s.degree();
                idx /= s.degree();
                e
            })
            .collect()
    }

    /// Embeds an element of a field lower in this tower (or of this field).
    pub fn embed(self: &Arc<Self>, x: &FieldElement) -> Result<FieldElement> {
        let src = x.field();
        if **src == **self {
            return Ok(x.clone());
        }
        if !(0..self.steps.len()).any(|l| *self.level_field(l) == **src) {
            return Err(Error::ParentMismatch(src.name.clone(), self.name.clone()));
        }
        let n = self.total_degree();
        Ok(match self.base {
            BaseField::Rationals => {
                let mut c = x.rational_coords().expect("char 0");
                c.resize(n, BigRational::zero());
                FieldElement::from_repr(self, Repr::Rat(c))
            }
            BaseField::Prime(_) => {
                let mut c = x.mod_coords().expect("char p");
                c.resize(n, 0);
                self.from_mod_coords(c)
            }
        })
    }

    /// The field at `level` of the tower; `level == steps().len()` is self.
    pub fn level_field(self: &Arc<Self>, level: usize) -> Field {
        if level == self.steps.len() {
            self.clone()
        } else {
            self.steps[level].below.clone()
        }
    }

    /// Extends the tower by a root of `minpoly`.
    pub fn extend(
        self: &Arc<Self>,
        minpoly: &UniPoly,
        symbol: &str,
        opts: &ExtendOptions,
    ) -> Result<Field> {
        if **minpoly.field() != **self {
            return Err(Error::ParentMismatch(
                minpoly.field().name.clone(),
                self.name.clone(),
            ));
        }
        let deg = minpoly.degree().unwrap_or(0);
        if deg < 2 {
            return Err(Error::InvalidArgument(format!(
                "minimal polynomial {minpoly} must have degree at least 2"
            )));
        }
        if !minpoly.lc().is_one() {
            return Err(Error::InvalidArgument(format!(
                "minimal polynomial {minpoly} must be monic"
            )));
        }
        if !valid_symbol(symbol) || self.steps.iter().any(|s| s.symbol == symbol) {
            return Err(Error::InvalidArgument(format!(
                "invalid or duplicate generator symbol `{symbol}`"
            )));
        }
        let certificate = match certify_irreducible(minpoly) {
            Ok(c) => c,
            Err(Error::UncertifiedIrreducibility(_)) if opts.allow_assertion => {
                Irreducibility::Asserted
            }
            Err(e) => return Err(e),
        };
        Ok(self.push_step(TowerStep {
            symbol: symbol.to_string(),
            minpoly: minpoly.clone(),
            below: self.clone(),
            origin: StepOrigin::Explicit,
            certificate,
        }))
    }

    fn push_step(self: &Arc<Self>, step: TowerStep) -> Field {
        let degree = step.degree();
        let sub_dim = self.total_degree();
        let low = &step.minpoly.coeffs()[..degree];
        let name = match &step.origin {
            StepOrigin::Cyclotomic(n) => format!("{}(zeta{n})", self.name),
            StepOrigin::FiniteField { p, k } => format!("Fq({p},{k};{})", step.symbol),
            StepOrigin::Explicit => {
                format!("{}({}:{})", self.name, step.symbol, step.minpoly.display_var("x"))
            }
        };
        let arith = match &self.arith {
            Arith::Rational(t) => {
                let mut t = t.clone();
                t.levels.push(Level {
                    degree,
                    sub_dim,
                    minpoly: low
                        .iter()
                        .map(|c| c.rational_coords().expect("char 0"))
                        .collect(),
                });
                Arith::Rational(t)
            }
            Arith::Modular { tower, .. } => {
                let mut t = tower.clone();
                t.levels.push(Level {
                    degree,
                    sub_dim,
                    minpoly: low
                        .iter()
                        .map(|c| c.mod_coords().expect("char p"))
                        .collect(),
                });
                let p = t.ops.0;
                let k = t.dim();
                let packed = p
                    .checked_pow(k as u32)
                    .filter(|&q| q <= TABLE_LIMIT)
                    .map(|q| PackedInfo {
                        p,
                        k,
                        tables: Some(build_tables(&t, p, k, q)),
                    });
                Arith::Modular { tower: t, packed }
            }
        };
        let mut steps = self.steps.clone();
        steps.push(step);
        Arc::new(FieldDescriptor {
            base: self.base,
            steps,
            name,
            arith,
        })
    }

    /// All elements of a finite field, in index order.
    pub fn elements(self: &Arc<Self>) -> Option<Vec<FieldElement>> {
        let q = self.order()?;
        if q > 1 << 20 {
            return None;
        }
        Some((0..q).map(|i| self.element_from_index(i)).collect())
    }

    /// Element whose `F_p`-coordinates are the base-`p` digits of `idx`.
    pub fn element_from_index(self: &Arc<Self>, idx: u64) -> FieldElement {
        let p = self.characteristic();
        assert!(p != 0);
        self.from_mod_coords(decode(idx, p, self.total_degree()))
    }

    /// A generator of the multiplicative group of a finite field.
    pub fn multiplicative_generator(self: &Arc<Self>) -> Option<FieldElement> {
        let q = self.order()?;
        if let Some(PackedInfo {
            tables: Some(t), ..
        }) = self.packed()
        {
            return Some(FieldElement::from_repr(self, Repr::Packed(t.exp[1 % t.exp.len()] as u64)));
        }
        let primes: Vec<u64> = factor_u64(q - 1).into_iter().map(|(l, _)| l).collect();
        let one = self.one();
        (1..q).map(|i| self.element_from_index(i)).find(|g| {
            primes.iter().all(|l| g.pow_u64((q - 1) / l) != one)
        })
    }

    /// A primitive `n`-th root of unity in this field, if one can be
    /// exhibited; the returned element is verified to have order exactly `n`.
    pub fn root_of_unity(self: &Arc<Self>, n: u64) -> Option<FieldElement> {
        if n == 0 {
            return None;
        }
        let candidate = if let Some(q) = self.order() {
            if (q - 1) % n != 0 {
                return None;
            }
            self.multiplicative_generator()?.pow_u64((q - 1) / n)
        } else if n <= 2 {
            self.from_i64(if n == 1 { 1 } else { -1 })
        } else {
            self.steps.iter().enumerate().find_map(|(lvl, s)| match s.origin {
                StepOrigin::Cyclotomic(m) if m % n == 0 => {
                    Some(self.generator(lvl).pow_u64(m / n))
                }
                StepOrigin::Cyclotomic(m) if m % 2 == 1 && (2 * m) % n == 0 => {
                    Some((-self.generator(lvl)).pow_u64(2 * m / n))
                }
                _ => None,
            })?
        };
        let one = self.one();
        let ok = candidate.pow_u64(n) == one
            && factor_u64(n)
                .iter()
                .all(|(l, _)| candidate.pow_u64(n / l) != one);
        ok.then_some(candidate)
    }
}

pub(crate) fn encode(coords: &[u64], p: u64) -> u64 {
    coords.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

pub(crate) fn decode(mut idx: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn build_tables(t: &Tower<ModOps>, p: u64, k: usize, q: u64) -> Tables {
    let primes: Vec<u64> = factor_u64(q - 1).into_iter().map(|(l, _)| l).collect();
    let one = t.one();
    let gen = (1..q)
        .map(|i| decode(i, p, k))
        .find(|g| primes.iter().all(|l| t.pow(g, (q - 1) / l) != one))
        .expect("finite field has a primitive element");
    let mut log = vec![u32::MAX; q as usize];
    let mut exp = Vec::with_capacity((q - 1) as usize);
    let mut cur = one;
    for i in 0..q - 1 {
        let id = encode(&cur, p);
        exp.push(id as u32);
        log[id as usize] = i as u32;
        cur = t.mul(&cur, &gen);
    }
    Tables { log, exp }
}

impl Tables {
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len() as u64;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[e as usize] as u64
    }

    pub(crate) fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.exp.len() as u64;
        let e = (n - self.log[a as usize] as u64) % n;
        Some(self.exp[e as usize] as u64)
    }

    pub(crate) fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = self.exp.len() as u64;
        let l = (self.log[a as usize] as u128 * (e % n) as u128 % n as u128) as u64;
        self.exp[l as usize] as u64
    }
}

