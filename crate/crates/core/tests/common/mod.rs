//! Brute-force oracles and random instance generators shared by the
//! integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use socle_lab::fields::{Field, FieldElement};
use socle_lab::funcfield::{FunctionField, Monomial, MultiPoly, RatFunc};
use socle_lab::kummer::{wp_solve, WpOutcome};
use socle_lab::parse::parse_function_field;

pub fn ring(text: &str) -> FunctionField {
    parse_function_field(text).unwrap()
}

pub fn random_elem(base: &Field, rng: &mut ChaCha8Rng, nonzero: bool) -> FieldElement {
    let q = base.order().unwrap();
    let lo = u64::from(nonzero);
    base.element_from_index(rng.gen_range(lo..q))
}

/// Random polynomial in variable 0 of degree exactly `deg`.
pub fn random_poly(ring: &FunctionField, rng: &mut ChaCha8Rng, deg: u32) -> MultiPoly {
    let base = ring.base();
    let nv = ring.nvars();
    let terms = (0..=deg)
        .map(|e| {
            let mut m = vec![0; nv];
            m[0] = e;
            (Monomial(m), random_elem(base, rng, e == deg))
        })
        .collect();
    MultiPoly::from_terms(ring, terms)
}

fn univariate_coeffs(f: &MultiPoly) -> Vec<FieldElement> {
    f.coeffs_in(0).iter().map(|c| c.as_constant().unwrap()).collect()
}

fn poly_from(ring: &FunctionField, coeffs: &[FieldElement]) -> MultiPoly {
    let coeffs: Vec<MultiPoly> = coeffs.iter().map(|c| MultiPoly::constant(ring, c.clone())).collect();
    MultiPoly::from_coeffs_in(ring, 0, &coeffs)
}

/// `g` monic with `g^p = f`, found coefficient by coefficient from the top
/// (needs `p` invertible in the base field).
fn monic_pth_root(f: &MultiPoly, p: u64) -> Option<MultiPoly> {
    let ring = f.ring();
    let base = ring.base();
    let c = univariate_coeffs(f);
    let m = c.len() - 1;
    if !(m as u64).is_multiple_of(p) {
        return None;
    }
    let e = m / p as usize;
    let inv_p = base.from_u64(p).inv().ok()?;
    let mut g = vec![base.zero(); e + 1];
    g[e] = base.one();
    for i in 1..=e {
        let h = univariate_coeffs(&poly_from(ring, &g).pow(p));
        let have = h.get(m - i).cloned().unwrap_or_else(|| base.zero());
        g[e - i] = &(&c[m - i] - &have) * &inv_p;
    }
    let g = poly_from(ring, &g);
    (g.pow(p) == *f).then_some(g)
}

/// Whether `f ∈ F_q(t)` is a `p`-th power, `p` prime to the characteristic.
pub fn is_pth_power(f: &RatFunc, p: u64) -> bool {
    let base = f.ring().base();
    let lc = f.num().lc();
    let n1 = f.num().scale(&lc.inv().unwrap());
    let const_ok = base.elements().unwrap().iter().any(|x| x.pow_u64(p) == lc);
    const_ok && monic_pth_root(&n1, p).is_some() && monic_pth_root(f.den(), p).is_some()
}

fn all_vectors(n: usize, p: u64) -> Vec<Vec<u64>> {
    (0..p.pow(n as u32))
        .map(|idx| (0..n).map(|i| (idx / p.pow(i as u32)) % p).collect())
        .collect()
}

fn log_p(count: usize, p: u64) -> usize {
    let mut k = 0;
    let mut c = 1usize;
    while c < count {
        c *= p as usize;
        k += 1;
    }
    assert_eq!(c, count, "solution set size must be a power of p");
    k
}

/// `n − log_p #{ν : ∏ a_i^{ν_i} ∈ (F*)^p}`.
pub fn brute_force_kummer_rank(ring: &FunctionField, elems: &[RatFunc], p: u64) -> usize {
    let count = all_vectors(elems.len(), p)
        .iter()
        .filter(|nu| {
            let f = elems
                .iter()
                .zip(nu.iter())
                .fold(RatFunc::one(ring), |acc, (a, &k)| acc.mul(&a.pow(k)));
            is_pth_power(&f, p)
        })
        .count();
    elems.len() - log_p(count, p)
}

/// `n − log_p #{ν : Σ ν_i a_i ∈ ℘(F)}`, each membership decided by the solver.
pub fn brute_force_as_rank(ring: &FunctionField, elems: &[RatFunc], p: u64) -> usize {
    let count = all_vectors(elems.len(), p)
        .iter()
        .filter(|nu| {
            let x = elems.iter().zip(nu.iter()).fold(RatFunc::zero(ring), |acc, (a, &k)| {
                acc.add(&a.scale(&ring.base().from_u64(k)))
            });
            matches!(wp_solve(&x).unwrap(), WpOutcome::Solved(_))
        })
        .count();
    elems.len() - log_p(count, p)
}

/// A random Kummer system over `F_q(t)` with `q ∈ {4, 5, 7}`, `n ≤ 3` and
/// factors of degree ≤ 4; relations are planted with probability 1/3.
pub fn random_kummer_system(rng: &mut ChaCha8Rng) -> (FunctionField, u64, Vec<RatFunc>) {
    let (q, p) = [(4, 3), (5, 2), (7, 2), (7, 3)][rng.gen_range(0..4)];
    let r = ring(&format!("F{q}(t)"));
    let n = rng.gen_range(1..=3);
    let pool: Vec<RatFunc> = (0..3)
        .map(|_| {
            let d = rng.gen_range(1..=2);
            RatFunc::from_poly(random_poly(&r, rng, d))
        })
        .collect();
    let mut elems = Vec::new();
    for i in 0..n {
        let planted = i > 0 && rng.gen_ratio(1, 3);
        let mut f = RatFunc::constant(&r, random_elem(r.base(), rng, true));
        if planted {
            for e in &elems {
                f = f.mul(&RatFunc::pow(e, rng.gen_range(0..p)));
            }
            let h = RatFunc::from_poly(random_poly(&r, rng, 1));
            f = f.mul(&h.pow(p));
        } else {
            let mut deg = 0;
            for g in &pool {
                let e: i64 = rng.gen_range(-1..=2);
                if deg + 2 * e.unsigned_abs() > 4 {
                    continue;
                }
                deg += 2 * e.unsigned_abs();
                f = f.mul(&g.pow_i64(e).unwrap());
            }
        }
        elems.push(f);
    }
    (r, p, elems)
}

/// A random element of `F_p(t)` with small poles.
pub fn random_as_element(r: &FunctionField, rng: &mut ChaCha8Rng) -> RatFunc {
    let dens = ["t", "t + 1", "t^2 + t + 1", "t^2 + 1"];
    let deg = rng.gen_range(0..=3);
    let mut b = RatFunc::from_poly(random_poly(r, rng, deg));
    for _ in 0..rng.gen_range(0..=2) {
        let d = socle_lab::parse::parse_ratfunc(r, dens[rng.gen_range(0..dens.len())]).unwrap();
        let k = rng.gen_range(1..=3);
        let deg = rng.gen_range(0..=1);
        let numer = RatFunc::from_poly(random_poly(r, rng, deg));
        if let Ok(x) = numer.div(&d.pow(k)) {
            b = b.add(&x);
        }
    }
    b
}

pub fn random_as_system(rng: &mut ChaCha8Rng) -> (FunctionField, u64, Vec<RatFunc>) {
    let p = [2u64, 3][rng.gen_range(0..2)];
    let r = ring(&format!("F{p}(t)"));
    let n = rng.gen_range(1..=3);
    let mut elems: Vec<RatFunc> = Vec::new();
    for i in 0..n {
        let b = if i > 0 && rng.gen_ratio(1, 3) {
            let mut x = RatFunc::zero(&r);
            for e in &elems {
                x = x.add(&e.scale(&r.base().from_u64(rng.gen_range(0..p))));
            }
            let h = random_as_element(&r, rng);
            x.add(&h.pow(p).sub(&h))
        } else {
            random_as_element(&r, rng)
        };
        elems.push(b);
    }
    (r, p, elems)
}
