//! Factorization of univariate polynomials over finite fields: square-free
//! decomposition, distinct-degree splitting and Cantor–Zassenhaus.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::descriptor::Field;
use super::element::FieldElement;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Factorization {
    pub unit: FieldElement,
    /// Monic irreducible factors with multiplicities, sorted by degree then
    /// coefficients.
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        self.factors.iter().fold(
            UniPoly::constant(self.unit.clone()),
            |acc, (f, m)| acc.mul(&f.pow(*m as u64)),
        )
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }
}

pub(crate) fn field_size(field: &Field) -> BigUint {
    num_traits::pow(
        BigUint::from(field.characteristic()),
        field.total_degree(),
    )
}

pub(crate) fn random_element(field: &Field, rng: &mut impl Rng) -> FieldElement {
    let p = field.characteristic();
    field.from_mod_coords((0..field.total_degree()).map(|_| rng.gen_range(0..p)).collect())
}

/// Square-free decomposition of a nonzero polynomial over a finite field
/// (or any perfect field of characteristic 0): monic `(g_i, i)` with
/// `f = lc · ∏ g_i^i`, the `g_i` square-free and pairwise coprime.
pub fn square_free_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let one = UniPoly::one(f.field());
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while w != one {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if z != one {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if c != one {
        let p = f.field().characteristic() as u32;
        let root = c.pth_root().expect("derivative-free part is a p-th power");
        for (g, m) in square_free_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree splitting of a monic square-free polynomial.
fn distinct_degree(f: &UniPoly, q: &BigUint) -> Vec<(UniPoly, usize)> {
    let field = f.field().clone();
    let x = UniPoly::x(&field);
    let one = UniPoly::one(&field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(q, &rest).expect("nonzero modulus");
        let g = h.sub(&x).gcd(&rest);
        if g != one {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero modulus");
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree(f: &UniPoly, d: usize, q: &BigUint, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let p = field.characteristic();
    let one = UniPoly::one(&field);
    loop {
        let a = UniPoly::new(&field, (0..n).map(|_| random_element(&field, rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map to F_2: a + a^2 + ... + a^(2^(kd-1))
            let kd = field.total_degree() * d;
            let mut t = a.rem(f).unwrap();
            let mut acc = t.clone();
            for _ in 1..kd {
                t = t.mul(&t).rem(f).unwrap();
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (num_traits::pow(q.clone(), d) - BigUint::one()) >> 1;
            a.powmod(&e, f).unwrap().sub(&one)
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, q, rng);
            out.extend(equal_degree(&f.div_exact(&g).unwrap(), d, q, rng));
            return out;
        }
    }
}

fn sort_key(f: &UniPoly) -> (usize, Vec<Vec<u64>>) {
    (
        f.degree().unwrap_or(0),
        f.coeffs()
            .iter()
            .rev()
            .map(|c| c.mod_coords().unwrap_or_default())
            .collect(),
    )
}

/// Complete factorization over a finite field.
pub fn factor_finite(f: &UniPoly) -> Result<Factorization> {
    let field = f.field().clone();
    if field.characteristic() == 0 {
        return Err(Error::UnsupportedBase(field.name().to_string()));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
    }
    let q = field_size(&field);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut factors = Vec::new();
    for (g, m) in square_free_decomposition(f) {
        for (h, d) in distinct_degree(&g, &q) {
            for irr in equal_degree(&h, d, &q, &mut rng) {
                factors.push((irr, m));
            }
        }
    }
    factors.sort_by_key(|(g, _)| sort_key(g));
    Ok(Factorization {
        unit: f.lc(),
        factors,
    })
}

/// All roots in the coefficient field of a polynomial over a finite field.
pub fn roots_finite(f: &UniPoly) -> Result<Vec<FieldElement>> {
    Ok(factor_finite(f)?
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| -&g.coeff(0))
        .collect())
}
