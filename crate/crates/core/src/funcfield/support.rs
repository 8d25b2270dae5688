//! Pairwise coprime square-free supports for families of rational
//! functions, used as the columns of valuation matrices.

use std::collections::BTreeMap;

use super::gcd::gcd;
use super::multipoly::{Monomial, MultiPoly};
use super::ratfunc::RatFunc;
use super::valuation::{classify, from_unipoly, multiplicity, to_unipoly, Prime, PrimeKind};
use crate::error::{Error, Result};
use crate::fields::{factor_finite, FieldElement};

/// One column of a valuation matrix: a square-free polynomial coprime to
/// every other column, whose prime factors all have the same kind. When
/// `prime` is set, the column is certified irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportColumn {
    pub poly: MultiPoly,
    pub kind: PrimeKind,
    pub prime: Option<Prime>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// The constant `c` in `f = c · ∏ col_j^{e_j}`.
    pub unit: FieldElement,
    pub exponents: Vec<i64>,
}

/// Factors of `b` lying in `K[T]` (when `keep_t`) or `K[U]`: the gcd of the
/// coefficients of `b` viewed as a polynomial in the other variable group.
fn group_content(b: &MultiPoly, keep_t: bool) -> MultiPoly {
    let ring = b.ring();
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, FieldElement)>> = BTreeMap::new();
    for (m, c) in b.terms() {
        let (mut outer, mut inner) = (m.0.clone(), m.0.clone());
        for i in 0..ring.nvars() {
            if ring.is_t_var(i) == keep_t {
                outer[i] = 0;
            } else {
                inner[i] = 0;
            }
        }
        groups
            .entry(Monomial(outer))
            .or_default()
            .push((Monomial(inner), c.clone()));
    }
    let mut g = MultiPoly::zero(ring);
    for (_, terms) in groups {
        g = gcd(&g, &MultiPoly::from_terms(ring, terms));
        if g.is_constant() {
            break;
        }
    }
    g
}

fn square_free_coprime(polys: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut work: Vec<MultiPoly> = polys.iter().rev().map(|p| p.monic()).collect();
    let mut result: Vec<MultiPoly> = Vec::new();
    'outer: while let Some(f) = work.pop() {
        if f.is_constant() {
            continue;
        }
        let support = f.support();
        let mut any_derivative = false;
        for &v in &support {
            let d = f.derivative(v);
            if d.is_zero() {
                continue;
            }
            any_derivative = true;
            let g = gcd(&f, &d);
            if !g.is_constant() {
                let h = f.div_exact(&g).unwrap();
                work.push(g);
                work.push(h);
                continue 'outer;
            }
        }
        if !any_derivative {
            // characteristic p and f = h^p
            work.push(f.pth_root().expect("p-th power over a perfect field"));
            continue;
        }
        for i in 0..result.len() {
            let g = gcd(&f, &result[i]);
            if !g.is_constant() {
                let b = result.remove(i);
                work.push(f.div_exact(&g).unwrap());
                work.push(b.div_exact(&g).unwrap());
                work.push(g);
                continue 'outer;
            }
        }
        result.push(f);
    }
    result
}

/// Column polynomials for the numerators and denominators of `elems`.
pub fn coprime_support(elems: &[RatFunc]) -> Vec<SupportColumn> {
    let polys: Vec<MultiPoly> = elems
        .iter()
        .filter(|f| !f.is_zero())
        .flat_map(|f| [f.num().clone(), f.den().clone()])
        .filter(|p| !p.is_constant())
        .collect();
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let finite = ring.characteristic() != 0;
    let mut pieces = Vec::new();
    for b in square_free_coprime(&polys) {
        let ct = group_content(&b, true);
        let cu = group_content(&b, false);
        let rest = b.div_exact(&ct.mul(&cu)).expect("contents divide");
        for piece in [ct, cu, rest] {
            if piece.is_constant() {
                continue;
            }
            let support = piece.support();
            if finite && support.len() == 1 {
                let fac = factor_finite(&to_unipoly(&piece, support[0])).expect("finite base");
                for (g, _) in fac.factors {
                    pieces.push(from_unipoly(&ring, &g, support[0]));
                }
            } else {
                pieces.push(piece.monic());
            }
        }
    }
    let mut cols: Vec<SupportColumn> = pieces
        .into_iter()
        .map(|poly| SupportColumn {
            kind: classify(&ring, &poly.support()).expect("nonconstant"),
            prime: Prime::certify(&poly).ok(),
            poly,
        })
        .collect();
    cols.sort_by_cached_key(|c| (c.poly.total_degree(), c.poly.to_string()));
    cols
}

/// Writes `f` as a constant times a product of column powers.
pub fn decompose(f: &RatFunc, cols: &[SupportColumn]) -> Result<Decomposition> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let strip = |p: &MultiPoly| -> Result<(Vec<i64>, FieldElement)> {
        let mut cur = p.clone();
        let mut exps = Vec::with_capacity(cols.len());
        for c in cols {
            let k = multiplicity(&cur, &c.poly);
            if k > 0 {
                cur = cur.div_exact(&c.poly.pow(k as u64)).unwrap();
            }
            exps.push(k as i64);
        }
        cur.as_constant()
            .filter(|c| !c.is_zero())
            .map(|c| (exps, c))
            .ok_or_else(|| Error::UnsupportedShape(format!("{p} is not supported on the columns")))
    };
    let (en, cn) = strip(f.num())?;
    let (ed, cd) = strip(f.den())?;
    Ok(Decomposition {
        unit: cn.try_div(&cd)?,
        exponents: en.iter().zip(&ed).map(|(a, b)| a - b).collect(),
    })
}
