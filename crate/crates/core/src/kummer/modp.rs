//! Linear algebra over `F_p` for small machine-word primes.

use crate::arith::{inv_mod, mul_mod};

pub fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

pub fn reduce_matrix(m: &[Vec<i64>], p: u64) -> Vec<Vec<u64>> {
    m.iter()
        .map(|r| r.iter().map(|&x| reduce(x, p)).collect())
        .collect()
}

/// Row-reduces in place; returns pivot columns.
pub fn rref(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    let t = mul_mod(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<u64>], p: u64) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, p).len()
}

/// Basis of `{x : m x = 0}` for an `rows × ncols` matrix.
pub fn kernel(m: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; ncols];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - a[r][f]) % p;
            }
            x
        })
        .collect()
}

pub fn transpose(m: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    (0..ncols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Basis of `{y : y m = 0}` (relations among the rows).
pub fn left_kernel(m: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    kernel(&transpose(m, ncols), m.len(), p)
}

pub fn mat_vec(m: &[Vec<u64>], x: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|r| r.iter().zip(x).fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, p)) % p))
        .collect()
}

pub fn vec_mat(y: &[u64], m: &[Vec<u64>], ncols: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; ncols];
    for (yi, row) in y.iter().zip(m) {
        if *yi == 0 {
            continue;
        }
        for (o, &a) in out.iter_mut().zip(row) {
            *o = (*o + mul_mod(*yi, a, p)) % p;
        }
    }
    out
}

pub fn dot(a: &[u64], b: &[u64], p: u64) -> u64 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| (acc + mul_mod(x, y, p)) % p)
}

/// Solves `m x = b`. On failure returns a Fredholm certificate `y` with
/// `y m = 0` and `y · b ≠ 0`.
pub fn solve(m: &[Vec<u64>], ncols: usize, b: &[u64], p: u64) -> Result<Vec<u64>, Vec<u64>> {
    let rows = m.len();
    // [m | b | I]
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (r, &bi))| {
            let mut row = r.clone();
            row.push(bi);
            row.extend((0..rows).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    // eliminate on the first ncols columns only
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p).unwrap();
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..a[i].len() {
                    let t = mul_mod(f, a[r][j], p);
                    a[i][j] = (a[i][j] + p - t) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if let Some(bad) = (r..rows).find(|&i| a[i][ncols] != 0) {
        return Err(a[bad][ncols + 1..].to_vec());
    }
    let mut x = vec![0u64; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][ncols];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_kernel_solve() {
        let p = 3;
        let m = vec![vec![1, 3 % 3], vec![1, 0]];
        assert_eq!(rank(&m, p), 1);
        let lk = left_kernel(&m, 2, p);
        assert_eq!(lk.len(), 1);
        assert_eq!(vec_mat(&lk[0], &m, 2, p), vec![0, 0]);

        let m = vec![vec![1, 2], vec![2, 4 % 3]];
        assert!(solve(&m, 2, &[1, 2], p).is_ok());
        let y = solve(&m, 2, &[1, 0], p).unwrap_err();
        assert_eq!(vec_mat(&y, &m, 2, p), vec![0, 0]);
        assert_ne!(dot(&y, &[1, 0], p), 0);
    }
}
