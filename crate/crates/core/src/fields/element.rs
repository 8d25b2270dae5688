use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::descriptor::{decode, encode, Arith, BaseField, Field, PackedInfo};
use crate::arith::{inv_mod, mod_pow, mul_mod};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Rat(Vec<BigRational>),
    Mod(Vec<u64>),
    /// Index of a small finite-field element: base-`p` digits are the
    /// `F_p`-coordinates.
    Packed(u64),
}

/// An element of a [`Field`](super::Field), stored in canonical coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && *self.field == *other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field.name())
    }
}

impl FieldElement {
    pub(crate) fn from_repr(field: &Field, repr: Repr) -> Self {
        FieldElement {
            field: field.clone(),
            repr,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(c) => c.iter().all(|x| x.is_zero()),
            Repr::Mod(c) => c.iter().all(|&x| x == 0),
            Repr::Packed(i) => *i == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// Coordinates over `Q` (characteristic 0 only).
    pub fn rational_coords(&self) -> Option<Vec<BigRational>> {
        match &self.repr {
            Repr::Rat(c) => Some(c.clone()),
            _ => None,
        }
    }

    /// Coordinates over `F_p` (positive characteristic only).
    pub fn mod_coords(&self) -> Option<Vec<u64>> {
        match &self.repr {
            Repr::Mod(c) => Some(c.clone()),
            Repr::Packed(i) => {
                let info = self.packed_info();
                Some(decode(*i, info.p, info.k))
            }
            Repr::Rat(_) => None,
        }
    }

    /// Index of a finite-field element (base-`p` digits are the coordinates).
    pub fn index(&self) -> Option<u64> {
        match &self.repr {
            Repr::Packed(i) => Some(*i),
            Repr::Mod(c) => {
                self.field.order()?;
                Some(encode(c, self.field.characteristic()))
            }
            Repr::Rat(_) => None,
        }
    }

    /// The element as a base scalar, if it lies in `Q` or `F_p`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rat(c) if c[1..].iter().all(|x| x.is_zero()) => Some(c[0].clone()),
            _ => None,
        }
    }

    pub fn as_prime_residue(&self) -> Option<u64> {
        let c = self.mod_coords()?;
        c[1..].iter().all(|&x| x == 0).then_some(c[0])
    }

    /// Whether the element lies in the bottom field of the tower.
    pub fn in_base(&self) -> bool {
        match self.field.base() {
            BaseField::Rationals => self.as_rational().is_some(),
            BaseField::Prime(_) => self.as_prime_residue().is_some(),
        }
    }

    fn packed_info(&self) -> &PackedInfo {
        self.field.packed().expect("packed representation")
    }

    fn check(&self, other: &Self) -> Result<()> {
        if std::sync::Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::ParentMismatch(
                self.field.name().to_string(),
                other.field.name().to_string(),
            ))
        }
    }

    fn with(&self, repr: Repr) -> Self {
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    fn packed_add(&self, a: u64, b: u64, sign: bool) -> u64 {
        let info = self.packed_info();
        let p = info.p;
        if info.k == 1 {
            return if sign {
                ((a as u128 + b as u128) % p as u128) as u64
            } else if a >= b {
                a - b
            } else {
                p - (b - a)
            };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..info.k {
            let (x, y) = (a % p, b % p);
            let d = if sign { (x + y) % p } else { (x + p - y) % p };
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    fn add_unchecked(&self, other: &Self, sign: bool) -> Self {
        let repr = match (&self.repr, &other.repr, &self.field.arith) {
            (Repr::Packed(a), Repr::Packed(b), _) => Repr::Packed(self.packed_add(*a, *b, sign)),
            (Repr::Rat(a), Repr::Rat(b), Arith::Rational(t)) => {
                Repr::Rat(if sign { t.add(a, b) } else { t.sub(a, b) })
            }
            (Repr::Mod(a), Repr::Mod(b), Arith::Modular { tower, .. }) => {
                Repr::Mod(if sign { tower.add(a, b) } else { tower.sub(a, b) })
            }
            _ => unreachable!("representation mismatch"),
        };
        self.with(repr)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let repr = match (&self.repr, &other.repr, &self.field.arith) {
            (Repr::Packed(a), Repr::Packed(b), _) => {
                let info = self.packed_info();
                Repr::Packed(match &info.tables {
                    Some(t) => t.mul(*a, *b),
                    None => mul_mod(*a, *b, info.p),
                })
            }
            (Repr::Rat(a), Repr::Rat(b), Arith::Rational(t)) => Repr::Rat(t.mul(a, b)),
            (Repr::Mod(a), Repr::Mod(b), Arith::Modular { tower, .. }) => {
                Repr::Mod(tower.mul(a, b))
            }
            _ => unreachable!("representation mismatch"),
        };
        self.with(repr)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match (&self.repr, &self.field.arith) {
            (Repr::Packed(a), _) => {
                let info = self.packed_info();
                Repr::Packed(match &info.tables {
                    Some(t) => t.inv(*a),
                    None => inv_mod(*a, info.p),
                }
                .ok_or(Error::DivisionByZero)?)
            }
            (Repr::Rat(a), Arith::Rational(t)) => Repr::Rat(t.inv(a).ok_or(Error::DivisionByZero)?),
            (Repr::Mod(a), Arith::Modular { tower, .. }) => {
                Repr::Mod(tower.inv(a).ok_or(Error::DivisionByZero)?)
            }
            _ => unreachable!("representation mismatch"),
        };
        Ok(self.with(repr))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        match (&self.repr, &self.field.arith) {
            (Repr::Packed(a), _) => {
                let info = self.packed_info();
                self.with(Repr::Packed(match &info.tables {
                    Some(t) => t.pow(*a, e),
                    None => mod_pow(*a, e, info.p),
                }))
            }
            (Repr::Rat(a), Arith::Rational(t)) => self.with(Repr::Rat(t.pow(a, e))),
            (Repr::Mod(a), Arith::Modular { tower, .. }) => self.with(Repr::Mod(tower.pow(a, e))),
            _ => unreachable!("representation mismatch"),
        }
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        if let Some(small) = e.to_u64() {
            return self.pow_u64(small);
        }
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow_u64(e as u64))
        } else {
            Ok(self.inv()?.pow_u64(e.unsigned_abs()))
        }
    }

    /// The unique `p`-th root in a finite field of characteristic `p`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.field.characteristic();
        if p == 0 {
            return None;
        }
        let k = self.field.total_degree() as u32;
        if k == 1 {
            return Some(self.clone());
        }
        Some(self.pow_big(&num_traits::pow(BigUint::from(p), (k - 1) as usize)))
    }

    fn monomial_name(&self, idx: usize) -> String {
        let exps = self.field.basis_exponents(idx);
        let parts: Vec<String> = self
            .field
            .steps()
            .iter()
            .zip(&exps)
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| {
                if e == 1 {
                    s.symbol.clone()
                } else {
                    format!("{}^{}", s.symbol, e)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Number of nonzero coordinates.
    pub fn term_count(&self) -> usize {
        match &self.repr {
            Repr::Rat(c) => c.iter().filter(|x| !x.is_zero()).count(),
            _ => self
                .mod_coords()
                .unwrap()
                .iter()
                .filter(|&&x| x != 0)
                .count(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // (is_negative, magnitude string, basis index), highest index first
        let terms: Vec<(bool, String, usize)> = match &self.repr {
            Repr::Rat(c) => c
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (x.is_negative(), x.abs().to_string(), i))
                .collect(),
            _ => self
                .mod_coords()
                .unwrap()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &x)| x != 0)
                .map(|(i, x)| (false, x.to_string(), i))
                .collect(),
        };
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (neg, mag, idx)) in terms.iter().enumerate() {
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *idx == 0 {
                f.write_str(mag)?;
            } else if mag == "1" {
                f.write_str(&self.monomial_name(*idx))?;
            } else {
                write!(f, "{}*{}", mag, self.monomial_name(*idx))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.zero().add_unchecked(self, false)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
