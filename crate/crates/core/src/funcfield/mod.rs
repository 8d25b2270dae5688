//! Multivariate polynomials and rational functions over an exact field, with
//! the variables split into T- and U-groups, prime-adic valuations and
//! characteristic-p utilities.

mod gcd;
mod multipoly;
mod ratfunc;
mod support;
mod valuation;

pub use gcd::{content_in, gcd, primitive_part};
pub use multipoly::{FunctionField, FunctionFieldDescriptor, Monomial, MultiPoly};
pub use ratfunc::{normalize, RatFunc};
pub use support::{coprime_support, decompose, Decomposition, SupportColumn};
pub use valuation::{classify, multiplicity, valuation, Prime, PrimeCertificate, PrimeKind, ValuationResult};
pub(crate) use valuation::{from_unipoly, to_unipoly};

use crate::error::{Error, Result};
use crate::fields::{factor_finite, FieldElement};

/// Complete factorization of a polynomial in at most one variable over a
/// finite base field: `f = unit · ∏ g^m`, each `g` monic irreducible.
pub fn factor_univariate(f: &MultiPoly) -> Result<(FieldElement, Vec<(MultiPoly, u32)>)> {
    let ring = f.ring();
    if ring.characteristic() == 0 {
        return Err(Error::UnsupportedBase(format!(
            "{} is infinite; only square-free decomposition is available",
            ring.base().name()
        )));
    }
    let support = f.support();
    if support.len() > 1 {
        return Err(Error::UnsupportedShape(format!("{f} is not univariate")));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let Some(&v) = support.first() else {
        return Ok((f.lc(), Vec::new()));
    };
    let fac = factor_finite(&to_unipoly(f, v))?;
    Ok((
        fac.unit,
        fac.factors
            .iter()
            .map(|(g, m)| (from_unipoly(ring, g, v), *m))
            .collect(),
    ))
}

/// Checks the characteristic-`p` identity `(x - y)^p = x^p - y^p`.
pub fn freshman_check(x: &RatFunc, y: &RatFunc) -> Result<bool> {
    let p = x.ring().characteristic();
    if p == 0 {
        return Err(Error::WrongCharacteristic(format!(
            "{} has characteristic 0",
            x.ring().base().name()
        )));
    }
    Ok(x.sub(y).pow(p) == x.pow(p).sub(&y.pow(p)))
}
