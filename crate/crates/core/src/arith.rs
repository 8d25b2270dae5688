//! Small integer number theory: primality, factorization, totients and
//! arithmetic modulo a machine-word prime.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Returns `(p, k)` when `q = p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factor_u64(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

/// Reduces a big integer into `[0, p)`.
pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Outcome of trial-dividing a big integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFactorization {
    pub factors: Vec<(BigUint, u32)>,
    /// Whether the factorization is known to be complete.
    pub complete: bool,
}

/// Factors `|n|` by trial division up to `bound`. A cofactor below
/// `bound^2` is prime, so the factorization is then complete.
pub fn factor_bigint(n: &BigInt, bound: u64) -> TrialFactorization {
    let mut m = n.abs().to_biguint().unwrap_or_default();
    let mut factors = Vec::new();
    if m.is_zero() {
        return TrialFactorization {
            factors,
            complete: false,
        };
    }
    let mut d = 2u64;
    while d <= bound {
        let dd = BigUint::from(d);
        if &dd * &dd > m {
            break;
        }
        if (&m % &dd).is_zero() {
            let mut e = 0;
            while (&m % &dd).is_zero() {
                m /= &dd;
                e += 1;
            }
            factors.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let complete = if m.is_one() {
        true
    } else {
        let b = BigUint::from(bound);
        let small = m < &b * &b;
        factors.push((m, 1));
        small
    };
    TrialFactorization { factors, complete }
}

/// Exact integer `k`-th root of a non-negative big integer, if it exists.
pub fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `k`-th root of a signed integer (odd `k` allows negatives).
pub fn exact_root_signed(n: &BigInt, k: u32) -> Option<BigInt> {
    match n.sign() {
        Sign::Minus if k % 2 == 1 => {
            exact_root(n.magnitude(), k).map(|r| -BigInt::from(r))
        }
        Sign::Minus => None,
        _ => exact_root(n.magnitude(), k).map(BigInt::from),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(7) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(91));
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn bigint_trial_division() {
        let f = factor_bigint(&BigInt::from(-72), 100);
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![(BigUint::from(2u32), 3), (BigUint::from(3u32), 2)]
        );
        assert_eq!(exact_root_signed(&BigInt::from(-27), 3), Some(BigInt::from(-3)));
        assert_eq!(exact_root_signed(&BigInt::from(-4), 2), None);
    }
}
