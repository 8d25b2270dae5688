//! Classes of nonzero constants in `K*/(K*)^p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::{exact_root, exact_root_signed, factor_bigint};
use crate::fields::{roots_finite, Field, FieldElement, StepOrigin, UniPoly};

const TRIAL_BOUND: u64 = 1_000_000;

pub(crate) enum ConstantClasses {
    /// `K* = <g>` cyclic of order `q - 1`; the class of `c` is its discrete
    /// logarithm mod `p`, read off from `c^((q-1)/p)`.
    Finite { q: u64, eps: FieldElement },
    /// `K` is `Q` or a cyclotomic field with `gcd([K:Q], p) = 1`: constants of
    /// the form `zeta_w^k · r` are classified by `k` and the prime exponents
    /// of `r`, the norm ruling out any further collapse.
    RootsTimesRationals { w: u64, zeta: FieldElement },
    Unresolved,
}

pub(crate) type ClassVector = Vec<(String, i64)>;

impl ConstantClasses {
    pub fn new(field: &Field, p: u64) -> Self {
        if let Some(q) = field.order() {
            let g = field.multiplicative_generator().expect("finite field");
            return ConstantClasses::Finite {
                q,
                eps: g.pow_u64((q - 1) / p),
            };
        }
        let d = field.total_degree() as u64;
        if d.gcd(&p) != 1 {
            return ConstantClasses::Unresolved;
        }
        let w = match field.steps() {
            [] => 2,
            [s] => match s.origin {
                StepOrigin::Cyclotomic(n) if n % 2 == 0 => n,
                StepOrigin::Cyclotomic(n) => 2 * n,
                _ => return ConstantClasses::Unresolved,
            },
            _ => return ConstantClasses::Unresolved,
        };
        match field.root_of_unity(w) {
            Some(zeta) => ConstantClasses::RootsTimesRationals { w, zeta },
            None => ConstantClasses::Unresolved,
        }
    }

    /// Writes `c = zeta^k · r` with `r > 0` rational.
    fn split_root_of_unity(&self, c: &FieldElement) -> Option<(u64, BigRational)> {
        let ConstantClasses::RootsTimesRationals { w, zeta } = self else {
            return None;
        };
        let zinv = zeta.inv().ok()?;
        let mut cur = c.clone();
        for k in 0..*w {
            if let Some(r) = cur.as_rational() {
                return Some(if r.is_negative() {
                    ((k + w / 2) % w, -r)
                } else {
                    (k, r)
                });
            }
            cur = &cur * &zinv;
        }
        None
    }

    /// Sparse class vector of `c`, or `None` when it cannot be determined.
    pub fn classify(&self, c: &FieldElement, p: u64) -> Option<ClassVector> {
        match self {
            ConstantClasses::Finite { q, eps } => {
                let x = c.pow_u64((q - 1) / p);
                let mut e = c.field().one();
                for k in 0..p {
                    if e == x {
                        return Some(vec![("constant".into(), k as i64)]);
                    }
                    e = &e * eps;
                }
                None
            }
            ConstantClasses::RootsTimesRationals { w, .. } => {
                let (k, r) = self.split_root_of_unity(c)?;
                let mut out = Vec::new();
                if w % p == 0 {
                    out.push(("root of unity".into(), k as i64));
                }
                for (part, sign) in [(r.numer(), 1i64), (r.denom(), -1)] {
                    let f = factor_bigint(part, TRIAL_BOUND);
                    if !f.complete && !part.is_one() {
                        return None;
                    }
                    for (l, e) in f.factors {
                        out.push((format!("prime {l}"), sign * e as i64));
                    }
                }
                Some(out)
            }
            ConstantClasses::Unresolved => None,
        }
    }

    /// Some `b` with `b^p = c`, if one is found.
    pub fn pth_root(&self, c: &FieldElement, p: u64) -> Option<FieldElement> {
        let field = c.field();
        match self {
            ConstantClasses::Finite { .. } => {
                let f = UniPoly::monomial(field.one(), p as usize).sub(&UniPoly::constant(c.clone()));
                roots_finite(&f).ok()?.into_iter().min_by_key(|r| r.index())
            }
            ConstantClasses::RootsTimesRationals { w, zeta } => {
                let (k, r) = self.split_root_of_unity(c)?;
                // j·p ≡ k (mod w)
                let j = (0..*w).find(|j| (j * p) % w == k)?;
                let num = exact_root(&r.numer().to_biguint()?, p as u32)?;
                let den = exact_root(&r.denom().to_biguint()?, p as u32)?;
                let root = BigRational::new(BigInt::from(num), BigInt::from(den));
                Some(&zeta.pow_u64(j) * &field.from_rational(&root))
            }
            ConstantClasses::Unresolved => {
                if field.characteristic() == 0 {
                    let r = c.as_rational()?;
                    if r.is_negative() && p.is_multiple_of(2) {
                        return None;
                    }
                    let root = |n: &BigInt| exact_root_signed(n, p as u32);
                    let x = BigRational::new(root(r.numer())?, root(r.denom())?);
                    return Some(field.from_rational(&x));
                }
                None
            }
        }
    }
}
