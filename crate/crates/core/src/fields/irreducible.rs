//! Irreducibility certificates for minimal polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::descriptor::{rationals, BaseField};
use super::factor::factor_finite;
use super::unipoly::UniPoly;
use crate::arith::factor_bigint;
use crate::error::{Error, Result};

/// How irreducibility of a tower step was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Linear,
    /// Degree ≤ 3 with no root in the coefficient field.
    RootSearch,
    /// Full factorization over a finite field returned a single factor.
    Factorization,
    /// Degree ≤ 3 over `Q` with no rational root.
    RationalRootTest,
    /// Eisenstein at `prime` after substituting `x -> x + shift`.
    Eisenstein { prime: BigInt, shift: i64 },
    /// Rational polynomial irreducible over `Q` whose degree is coprime to
    /// the degree of the number field it is adjoined to.
    CoprimeDegree,
    Cyclotomic,
    /// Accepted on the caller's word.
    Asserted,
}

impl std::fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Irreducibility::Linear => f.write_str("linear"),
            Irreducibility::RootSearch => f.write_str("root search"),
            Irreducibility::Factorization => f.write_str("finite-field factorization"),
            Irreducibility::RationalRootTest => f.write_str("rational root test"),
            Irreducibility::Eisenstein { prime, shift } => {
                write!(f, "Eisenstein at {prime} (shift {shift})")
            }
            Irreducibility::CoprimeDegree => f.write_str("coprime degree over Q"),
            Irreducibility::Cyclotomic => f.write_str("cyclotomic"),
            Irreducibility::Asserted => f.write_str("asserted"),
        }
    }
}

const ROOT_SEARCH_LIMIT: u64 = 1 << 16;
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Certifies irreducibility of a polynomial over its coefficient field, or
/// reports a factorization witness, or gives up with
/// [`Error::UncertifiedIrreducibility`].
pub fn certify_irreducible(f: &UniPoly) -> Result<Irreducibility> {
    let deg = f
        .degree()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("{f} is constant")))?;
    if deg == 1 {
        return Ok(Irreducibility::Linear);
    }
    let field = f.field().clone();
    match field.base() {
        BaseField::Prime(_) => {
            if deg <= 3 {
                if let Some(elems) = field.order().filter(|&q| q <= ROOT_SEARCH_LIMIT).and_then(|_| field.elements()) {
                    return match elems.iter().find(|x| f.eval(x).is_zero()) {
                        Some(r) => Err(Error::Reducible {
                            poly: f.to_string(),
                            witness: format!("root {r}"),
                        }),
                        None => Ok(Irreducibility::RootSearch),
                    };
                }
            }
            let fac = factor_finite(f)?;
            if fac.is_irreducible() {
                Ok(Irreducibility::Factorization)
            } else {
                let (g, m) = &fac.factors[0];
                Err(Error::Reducible {
                    poly: f.to_string(),
                    witness: format!("factor ({g})^{m}"),
                })
            }
        }
        BaseField::Rationals => {
            let rat: Option<Vec<BigRational>> = f.coeffs().iter().map(|c| c.as_rational()).collect();
            let uncertified = || Error::UncertifiedIrreducibility(format!("{f} over {}", field.name()));
            let Some(rat) = rat else {
                return Err(uncertified());
            };
            let over_q = certify_over_q(&integer_coeffs(&rat)).map_err(|e| match e {
                Error::Reducible { witness, .. } => Error::Reducible {
                    poly: f.to_string(),
                    witness,
                },
                _ => uncertified(),
            })?;
            let k = field.total_degree();
            if k == 1 {
                Ok(over_q)
            } else if deg.gcd(&k) == 1 {
                Ok(Irreducibility::CoprimeDegree)
            } else {
                Err(uncertified())
            }
        }
    }
}

/// Clears denominators of a rational coefficient vector.
pub fn integer_coeffs(c: &[BigRational]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let m = n.abs();
    if m > BigInt::from(DIVISOR_LIMIT) {
        return None;
    }
    let m = m.to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// A rational root of an integer polynomial, by the rational root theorem.
/// `Ok(None)` means no rational root exists; `Err` means the candidate
/// set was too large to enumerate.
pub fn rational_root(c: &[BigInt]) -> std::result::Result<Option<BigRational>, ()> {
    let Some(low) = c.iter().position(|x| !x.is_zero()) else {
        return Ok(Some(BigRational::zero()));
    };
    if low > 0 {
        return Ok(Some(BigRational::zero()));
    }
    let lead = c.last().unwrap();
    let (Some(num), Some(den)) = (divisors(&c[0]), divisors(lead)) else {
        return Err(());
    };
    for a in &num {
        for b in &den {
            for s in [a.clone(), -a.clone()] {
                let r = BigRational::new(s, b.clone());
                let val = c
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, x| acc * &r + BigRational::from_integer(x.clone()));
                if val.is_zero() {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

fn shift_poly(c: &[BigInt], s: i64) -> Vec<BigInt> {
    let q = rationals();
    let f = UniPoly::new(&q, c.iter().map(|x| q.from_bigint(x)).collect());
    let g = f.compose(&UniPoly::from_i64s(&q, &[s, 1]));
    g.coeffs()
        .iter()
        .map(|x| x.as_rational().unwrap().to_integer())
        .collect()
}

fn eisenstein(c: &[BigInt]) -> Option<BigInt> {
    let n = c.len() - 1;
    let g = c[..n].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let fac = factor_bigint(&g, 1_000_000);
    fac.factors
        .iter()
        .take(if fac.complete { usize::MAX } else { fac.factors.len() - 1 })
        .map(|(l, _)| BigInt::from(l.clone()))
        .find(|l| !(&c[n] % l).is_zero() && !(&c[0] % (l * l)).is_zero())
}

/// Irreducibility over `Q` of an integer polynomial of degree ≥ 2.
pub fn certify_over_q(c: &[BigInt]) -> Result<Irreducibility> {
    let deg = c.len() - 1;
    let show = || {
        let q = rationals();
        UniPoly::new(&q, c.iter().map(|x| q.from_bigint(x)).collect()).to_string()
    };
    match rational_root(c) {
        Ok(Some(r)) => {
            return Err(Error::Reducible {
                poly: show(),
                witness: format!("rational root {r}"),
            })
        }
        Ok(None) if deg <= 3 => return Ok(Irreducibility::RationalRootTest),
        _ => {}
    }
    for s in [0i64, 1, -1, 2, -2] {
        let shifted = if s == 0 { c.to_vec() } else { shift_poly(c, s) };
        if let Some(prime) = eisenstein(&shifted) {
            return Ok(Irreducibility::Eisenstein { prime, shift: s });
        }
    }
    Err(Error::UncertifiedIrreducibility(show()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{cyclotomic, prime_field};

    #[test]
    fn certificates() {
        let f2 = prime_field(2).unwrap();
        assert_eq!(
            certify_irreducible(&UniPoly::from_i64s(&f2, &[1, 1, 1])).unwrap(),
            Irreducibility::RootSearch
        );
        assert!(matches!(
            certify_irreducible(&UniPoly::from_i64s(&f2, &[1, 0, 1])),
            Err(Error::Reducible { .. })
        ));
        let q = rationals();
        assert_eq!(
            certify_irreducible(&UniPoly::from_i64s(&q, &[-2, 0, 0, 0, 0, 1])).unwrap(),
            Irreducibility::Eisenstein {
                prime: BigInt::from(2),
                shift: 0
            }
        );
        // x^4 + x^3 + x^2 + x + 1 is Eisenstein at 5 after x -> x + 1
        assert!(matches!(
            certify_irreducible(&UniPoly::from_i64s(&q, &[1, 1, 1, 1, 1])).unwrap(),
            Irreducibility::Eisenstein { .. }
        ));
        // x^4 + 1 becomes Eisenstein at 2 after x -> x + 1
        assert!(matches!(
            certify_irreducible(&UniPoly::from_i64s(&q, &[1, 0, 0, 0, 1])),
            Ok(Irreducibility::Eisenstein { .. })
        ));
        let k = cyclotomic(5).unwrap();
        assert_eq!(
            certify_irreducible(&UniPoly::from_i64s(&k, &[-2, 0, 0, 0, 0, 1])).unwrap(),
            Irreducibility::CoprimeDegree
        );
        assert!(matches!(
            certify_irreducible(&UniPoly::from_i64s(&k, &[-2, 0, 1])),
            Err(Error::UncertifiedIrreducibility(_))
        ));
    }
}
