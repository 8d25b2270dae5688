use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::descriptor::Field;
use super::unipoly::UniPoly;

/// Integer coefficients of the `n`-th cyclotomic polynomial, obtained by
/// dividing `x^n - 1` by every `Φ_d` with `d | n`, `d < n`.
pub fn cyclotomic_coeffs(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_coeffs(d));
        }
    }
    num
}

fn div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
        quot[i - db] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

/// `Φ_n` with coefficients mapped into `field`.
pub fn cyclotomic_polynomial(field: &Field, n: u64) -> UniPoly {
    UniPoly::new(
        field,
        cyclotomic_coeffs(n)
            .iter()
            .map(|c| field.from_bigint(c))
            .collect(),
    )
}
