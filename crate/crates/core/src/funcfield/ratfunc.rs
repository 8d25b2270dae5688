use std::collections::HashMap;
use std::fmt;

use super::gcd::gcd;
use super::multipoly::{FunctionField, MultiPoly};
use crate::error::{Error, Result};
use crate::fields::FieldElement;

/// Reduced fraction of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MultiPoly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

/// Reduces `num/den` to canonical form.
pub fn normalize(num: &MultiPoly, den: &MultiPoly) -> Result<RatFunc> {
    num.same_ring(den)?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RatFunc {
            num: num.clone(),
            den: MultiPoly::one(num.ring()),
        });
    }
    let g = gcd(num, den);
    let (n, d) = if g.is_constant() {
        (num.clone(), den.clone())
    } else {
        (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
    };
    let c = d.lc().inv()?;
    Ok(RatFunc {
        num: n.scale(&c),
        den: d.scale(&c),
    })
}

impl RatFunc {
    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.ring());
        RatFunc { num: p, den }
    }

    pub fn zero(ring: &FunctionField) -> Self {
        Self::from_poly(MultiPoly::zero(ring))
    }

    pub fn one(ring: &FunctionField) -> Self {
        Self::from_poly(MultiPoly::one(ring))
    }

    pub fn constant(ring: &FunctionField, c: FieldElement) -> Self {
        Self::from_poly(MultiPoly::constant(ring, c))
    }

    pub fn from_i64(ring: &FunctionField, n: i64) -> Self {
        Self::from_poly(MultiPoly::from_i64(ring, n))
    }

    pub fn var(ring: &FunctionField, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(ring, i))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn ring(&self) -> &FunctionField {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Variables occurring in numerator or denominator.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.num.support();
        s.extend(self.den.support());
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return normalize(&self.num.add(&other.num), &self.den).expect("nonzero denominator");
        }
        normalize(
            &self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            &self.den.mul(&other.den),
        )
        .expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        normalize(&self.num.mul(&other.num), &self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        normalize(&self.num.scale(c), &self.den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        normalize(&self.den, &self.num)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> Self {
        // numerator and denominator stay coprime
        let c = self.den.pow(e).lc().inv().expect("nonzero");
        RatFunc {
            num: self.num.pow(e).scale(&c),
            den: self.den.pow(e).scale(&c),
        }
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Replaces the bound variables by the given rational functions (all in
    /// this ring).
    pub fn substitute(&self, bindings: &[(usize, RatFunc)]) -> Result<RatFunc> {
        let map: HashMap<usize, &RatFunc> = bindings.iter().map(|(v, r)| (*v, r)).collect();
        let num = eval_poly(&self.num, &map);
        let den = eval_poly(&self.den, &map);
        if den.is_zero() {
            return Err(Error::PoleAtSubstitution(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        num.div(&den)
    }

    /// Maps into another ring with matching variable names.
    pub fn rename_into(&self, target: &FunctionField) -> Result<RatFunc> {
        normalize(&self.num.rename_into(target)?, &self.den.rename_into(target)?)
    }
}

fn eval_poly(p: &MultiPoly, map: &HashMap<usize, &RatFunc>) -> RatFunc {
    let ring = p.ring();
    let mut acc = RatFunc::zero(ring);
    let mut cache: HashMap<(usize, u32), RatFunc> = HashMap::new();
    for (m, c) in p.terms() {
        let mut free = vec![0u32; ring.nvars()];
        let mut term = RatFunc::constant(ring, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match map.get(&i) {
                Some(r) => {
                    let pw = cache.entry((i, e)).or_insert_with(|| r.pow(e as u64)).clone();
                    term = term.mul(&pw);
                }
                None => free[i] = e,
            }
        }
        let mono = MultiPoly::from_terms(
            ring,
            vec![(super::multipoly::Monomial(free), ring.base().one())],
        );
        acc = acc.add(&term.mul(&RatFunc::from_poly(mono)));
    }
    acc
}
