//! Dense Gaussian elimination over an exact field.

use super::element::FieldElement;
use crate::error::{Error, Result};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].inv().expect("pivot nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<FieldElement>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solves the square system `a · x = b`.
pub fn solve(a: &[Vec<FieldElement>], b: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("system is not square".into()));
    }
    let mut m: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::SingularSystem);
    }
    Ok(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of `{x : m · x = 0}` for an `r × ncols` matrix.
pub fn kernel(m: &[Vec<FieldElement>], ncols: usize, zero: &FieldElement) -> Vec<Vec<FieldElement>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let one = zero.field().one();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); ncols];
            v[free] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            v
        })
        .collect()
}
