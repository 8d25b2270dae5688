//! Coordinate arithmetic for a tower of simple extensions over a prime or
//! rational base. An element of level `k` is a vector of `dim(k)` base
//! scalars: `degree(k)` consecutive chunks, each an element of level `k-1`
//! (the coefficient of `g_k^i`).

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{inv_mod, mul_mod};

pub(crate) trait ScalarOps: Send + Sync {
    type S: Clone + PartialEq + std::fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::S;
    fn one(&self) -> Self::S;
    fn add(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn sub(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn mul(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn inv(&self, a: &Self::S) -> Option<Self::S>;
    fn is_zero(&self, a: &Self::S) -> bool;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RatOps;

impl ScalarOps for RatOps {
    type S = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ModOps(pub u64);

impl ScalarOps for ModOps {
    type S = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let p = self.0;
        if a >= b {
            a - b
        } else {
            p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// One extension step: `g^degree = -(m_0 + m_1 g + ... + m_{d-1} g^{d-1})`.
#[derive(Debug, Clone)]
pub(crate) struct Level<S> {
    pub degree: usize,
    pub sub_dim: usize,
    /// Non-leading coefficients of the monic minimal polynomial, each a
    /// coordinate vector of the level below.
    pub minpoly: Vec<Vec<S>>,
}

#[derive(Debug, Clone)]
pub(crate) struct Tower<O: ScalarOps> {
    pub ops: O,
    pub levels: Vec<Level<O::S>>,
}

impl<O: ScalarOps> Tower<O> {
    pub fn new(ops: O) -> Self {
        Tower {
            ops,
            levels: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.levels
            .last()
            .map(|l| l.degree * l.sub_dim)
            .unwrap_or(1)
    }

    pub fn zero(&self) -> Vec<O::S> {
        vec![self.ops.zero(); self.dim()]
    }

    pub fn one(&self) -> Vec<O::S> {
        let mut v = self.zero();
        v[0] = self.ops.one();
        v
    }

    pub fn is_zero(&self, a: &[O::S]) -> bool {
        a.iter().all(|x| self.ops.is_zero(x))
    }

    pub fn add(&self, a: &[O::S], b: &[O::S]) -> Vec<O::S> {
        a.iter().zip(b).map(|(x, y)| self.ops.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[O::S], b: &[O::S]) -> Vec<O::S> {
        a.iter().zip(b).map(|(x, y)| self.ops.sub(x, y)).collect()
    }

    pub fn mul(&self, a: &[O::S], b: &[O::S]) -> Vec<O::S> {
        self.mul_at(self.levels.len(), a, b)
    }

    fn mul_at(&self, k: usize, a: &[O::S], b: &[O::S]) -> Vec<O::S> {
        if k == 0 {
            return vec![self.ops.mul(&a[0], &b[0])];
        }
        let lv = &self.levels[k - 1];
        let (d, sd) = (lv.degree, lv.sub_dim);
        let zero_chunk = || vec![self.ops.zero(); sd];
        let mut prod: Vec<Vec<O::S>> = (0..2 * d - 1).map(|_| zero_chunk()).collect();
        for i in 0..d {
            let ai = &a[i * sd..(i + 1) * sd];
            if ai.iter().all(|x| self.ops.is_zero(x)) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * sd..(j + 1) * sd];
                if bj.iter().all(|x| self.ops.is_zero(x)) {
                    continue;
                }
                let m = self.mul_at(k - 1, ai, bj);
                for (acc, x) in prod[i + j].iter_mut().zip(&m) {
                    *acc = self.ops.add(acc, x);
                }
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[i], zero_chunk());
            if c.iter().all(|x| self.ops.is_zero(x)) {
                continue;
            }
            for (j, mj) in lv.minpoly.iter().enumerate() {
                let t = self.mul_at(k - 1, &c, mj);
                for (acc, x) in prod[i - d + j].iter_mut().zip(&t) {
                    *acc = self.ops.sub(acc, x);
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }

    /// Inverse by solving the multiplication-by-`a` linear system.
    pub fn inv(&self, a: &[O::S]) -> Option<Vec<O::S>> {
        if self.is_zero(a) {
            return None;
        }
        let n = self.dim();
        if n == 1 {
            return self.ops.inv(&a[0]).map(|x| vec![x]);
        }
        // Augmented matrix rows: row i holds coefficient i of a*e_j for all j.
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = self.zero();
            e[j] = self.ops.one();
            cols.push(self.mul(a, &e));
        }
        let mut m: Vec<Vec<O::S>> = (0..n)
            .map(|i| {
                let mut row: Vec<O::S> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { self.ops.one() } else { self.ops.zero() });
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| !self.ops.is_zero(&m[r][c]))?;
            m.swap(c, piv);
            let inv = self.ops.inv(&m[c][c])?;
            for x in m[c].iter_mut() {
                *x = self.ops.mul(x, &inv);
            }
            for r in 0..n {
                if r != c && !self.ops.is_zero(&m[r][c]) {
                    let f = m[r][c].clone();
                    for k in c..=n {
                        let t = self.ops.mul(&f, &m[c][k]);
                        m[r][k] = self.ops.sub(&m[r][k], &t);
                    }
                }
            }
        }
        Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }

    pub fn pow(&self, a: &[O::S], mut e: u64) -> Vec<O::S> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_multiplication() {
        // F_2[w]/(w^2+w+1): w*w = w+1
        let mut t = Tower::new(ModOps(2));
        t.levels.push(Level {
            degree: 2,
            sub_dim: 1,
            minpoly: vec![vec![1], vec![1]],
        });
        assert_eq!(t.mul(&[0, 1], &[0, 1]), vec![1, 1]);
        let inv = t.inv(&[0, 1]).unwrap();
        assert_eq!(t.mul(&inv, &[0, 1]), vec![1, 0]);
    }
}
