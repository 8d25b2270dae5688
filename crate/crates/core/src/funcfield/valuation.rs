use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;

use super::gcd::content_in;
use super::multipoly::{FunctionField, MultiPoly};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::fields::{certify_over_q, factor_finite, integer_coeffs, BaseField, Irreducibility, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeKind {
    PureT,
    PureU,
    Mixed,
}

impl fmt::Display for PrimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeKind::PureT => "pure-T",
            PrimeKind::PureU => "pure-U",
            PrimeKind::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeCertificate {
    /// Total degree one.
    Linear,
    /// Degree one in the named variable and primitive with respect to it.
    LinearIn(String),
    /// A polynomial in a single variable, certified over the base field.
    Univariate(Irreducibility),
    Asserted,
}

impl fmt::Display for PrimeCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeCertificate::Linear => f.write_str("linear"),
            PrimeCertificate::LinearIn(v) => write!(f, "primitive of degree 1 in {v}"),
            PrimeCertificate::Univariate(c) => write!(f, "univariate: {c}"),
            PrimeCertificate::Asserted => f.write_str("asserted"),
        }
    }
}

/// An irreducible polynomial of the function field, normalized monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prime {
    poly: MultiPoly,
    certificate: PrimeCertificate,
    kind: PrimeKind,
}

pub fn classify(ring: &FunctionField, support: &[usize]) -> Option<PrimeKind> {
    let has_t = support.iter().any(|&i| ring.is_t_var(i));
    let has_u = support.iter().any(|&i| !ring.is_t_var(i));
    match (has_t, has_u) {
        (true, true) => Some(PrimeKind::Mixed),
        (true, false) => Some(PrimeKind::PureT),
        (false, true) => Some(PrimeKind::PureU),
        (false, false) => None,
    }
}

/// Converts a polynomial in the single variable `var` to a [`UniPoly`].
pub(crate) fn to_unipoly(p: &MultiPoly, var: usize) -> UniPoly {
    let base = p.ring().base();
    UniPoly::new(
        base,
        p.coeffs_in(var)
            .iter()
            .map(|c| c.as_constant().expect("univariate"))
            .collect(),
    )
}

pub(crate) fn from_unipoly(ring: &FunctionField, f: &UniPoly, var: usize) -> MultiPoly {
    let coeffs: Vec<MultiPoly> = f
        .coeffs()
        .iter()
        .map(|c| MultiPoly::constant(ring, c.clone()))
        .collect();
    MultiPoly::from_coeffs_in(ring, var, &coeffs)
}

/// Irreducibility of a polynomial in one variable over the base field.
fn certify_univariate(f: &UniPoly) -> Result<Irreducibility> {
    let show = || f.to_string();
    match f.field().base() {
        BaseField::Prime(_) => {
            let fac = factor_finite(f)?;
            if fac.is_irreducible() {
                Ok(Irreducibility::Factorization)
            } else {
                Err(Error::NotIrreducible(format!("{} (factor {})", show(), fac.factors[0].0)))
            }
        }
        BaseField::Rationals => {
            let deg = f.degree().unwrap_or(0);
            let rat: Option<Vec<BigRational>> = f.coeffs().iter().map(|c| c.as_rational()).collect();
            let rat = rat.ok_or_else(|| Error::NotIrreducible(format!("{} cannot be certified", show())))?;
            let cert = certify_over_q(&integer_coeffs(&rat)).map_err(|e| match e {
                Error::Reducible { witness, .. } => Error::NotIrreducible(format!("{} ({witness})", show())),
                _ => Error::NotIrreducible(format!("{} cannot be certified", show())),
            })?;
            let k = f.field().total_degree();
            if k == 1 {
                Ok(cert)
            } else if deg.gcd(&k) == 1 {
                Ok(Irreducibility::CoprimeDegree)
            } else {
                Err(Error::NotIrreducible(format!("{} cannot be certified", show())))
            }
        }
    }
}

impl Prime {
    /// Certifies irreducibility; fails with [`Error::NotIrreducible`] when
    /// the polynomial is reducible or no certificate applies.
    pub fn certify(poly: &MultiPoly) -> Result<Prime> {
        let support = poly.support();
        let kind = classify(poly.ring(), &support)
            .ok_or_else(|| Error::NotIrreducible(format!("{poly} is constant")))?;
        let mk = |certificate| Prime {
            poly: poly.monic(),
            certificate,
            kind,
        };
        if poly.total_degree() == Some(1) {
            return Ok(mk(PrimeCertificate::Linear));
        }
        if support.len() == 1 {
            let cert = certify_univariate(&to_unipoly(poly, support[0]))?;
            return Ok(mk(PrimeCertificate::Univariate(cert)));
        }
        for &v in &support {
            if poly.degree_in(v) == 1 && content_in(poly, v).is_constant() {
                return Ok(mk(PrimeCertificate::LinearIn(poly.ring().vars()[v].clone())));
            }
        }
        Err(Error::NotIrreducible(format!("{poly} cannot be certified")))
    }

    /// Accepts `poly` as irreducible on the caller's word.
    pub fn assume(poly: &MultiPoly) -> Result<Prime> {
        let kind = classify(poly.ring(), &poly.support())
            .ok_or_else(|| Error::NotIrreducible(format!("{poly} is constant")))?;
        Ok(Prime {
            poly: poly.monic(),
            certificate: PrimeCertificate::Asserted,
            kind,
        })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn certificate(&self) -> &PrimeCertificate {
        &self.certificate
    }

    pub fn kind(&self) -> PrimeKind {
        self.kind
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationResult {
    pub prime: Prime,
    /// `None` stands for `+∞` (the valuation of zero).
    pub value: Option<i64>,
    pub kind: PrimeKind,
}

/// Multiplicity of `q` in the nonzero polynomial `p`.
pub fn multiplicity(p: &MultiPoly, q: &MultiPoly) -> u32 {
    let mut k = 0;
    let mut cur = p.clone();
    while let Some(next) = cur.div_exact(q) {
        cur = next;
        k += 1;
    }
    k
}

/// `q`-adic valuation of `f`.
pub fn valuation(f: &RatFunc, q: &Prime) -> Result<ValuationResult> {
    f.num().same_ring(q.poly())?;
    let value = if f.is_zero() {
        None
    } else {
        Some(multiplicity(f.num(), q.poly()) as i64 - multiplicity(f.den(), q.poly()) as i64)
    };
    Ok(ValuationResult {
        prime: q.clone(),
        value,
        kind: q.kind(),
    })
}

