//! Dense linear algebra over 𝔽_p, for affine systems and affine inverses.

use super::ring::{inv_mod, mul_mod, neg_mod};

/// Row-reduce in place; returns the rank.
pub fn row_reduce(m: &mut [Vec<u32>], p: u32) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..cols {
                    let sub = mul_mod(factor, m[rank][c], p);
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(m: &[Vec<u32>], p: u32) -> usize {
    row_reduce(&mut m.to_vec(), p)
}

/// Number of solutions of `A x = b` in 𝔽_p^cols, as a power of p (`None` if inconsistent).
pub fn solution_exponent(a: &[Vec<u32>], b: &[u32], p: u32, cols: usize) -> Option<usize> {
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi % p);
            r
        })
        .collect();
    let ra = rank(a, p);
    let raug = row_reduce(&mut aug, p);
    (ra == raug).then_some(cols - ra)
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(a: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let r = row_reduce(&mut aug, p);
    if r < n || (0..n).any(|i| aug[i][i] != 1) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec(a: &[Vec<u32>], x: &[u32], p: u32) -> Vec<u32> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(0, |acc, (&r, &v)| (acc + mul_mod(r, v, p)) % p)
        })
        .collect()
}

pub fn negate(x: &[u32], p: u32) -> Vec<u32> {
    x.iter().map(|&v| neg_mod(v, p)).collect()
}
