//! Exact linear algebra over rationals.
//!
//! Rank goes through fraction-free (Bareiss) elimination on an integer
//! matrix obtained by clearing denominators row by row; row scaling does not
//! change rank. Small dense systems are solved by plain rational Gaussian
//! elimination.

use crate::scalar::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Vector = Vec<Rat>;

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn neg(v: &[Rat]) -> Vector {
    v.iter().map(|x| -x).collect()
}

pub fn scale(v: &[Rat], c: &Rat) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Lexicographic comparison, used for all canonical orderings.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// True when the first nonzero coordinate is positive.
pub fn lex_positive(v: &[Rat]) -> bool {
    for x in v {
        if x.is_positive() {
            return true;
        }
        if x.is_negative() {
            return false;
        }
    }
    false
}

/// Clears denominators of one row, returning integers with the same sign
/// pattern and zero set.
fn clear_row(row: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.denom());
    }
    row.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// Rank by Bareiss fraction-free elimination.
pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_row(r)).collect();
    bareiss_rank(&mut m)
}

fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0; // pivot row
    let mut c = 0;
    while r < nrows && c < ncols {
        // pivot search in column c
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            c += 1;
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = &t / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        c += 1;
    }
    r
}

/// Rank modulo a prime; a lower bound on the true rank.
pub fn rank_mod_p(rows: &[Vector], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            clear_row(row)
                .into_iter()
                .map(|x| {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.try_into().unwrap_or(0u64)
                })
                .collect()
        })
        .collect();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    let mut c = 0;
    while r < nrows && c < ncols {
        let Some(piv) = (r..nrows).find(|&i| m[i][c] != 0) else {
            c += 1;
            continue;
        };
        m.swap(r, piv);
        let inv = mod_inv(m[r][c], p);
        for i in r + 1..nrows {
            if m[i][c] != 0 {
                let f = mod_mul(m[i][c], inv, p);
                for j in c..ncols {
                    let sub = mod_mul(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        r += 1;
        c += 1;
    }
    r
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, p);
        }
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    acc
}

/// Indices of a maximal linearly independent subset of `rows`, greedy in the
/// given order.
pub fn independent_subset(rows: &[Vector]) -> Vec<usize> {
    let mut basis: Vec<Vector> = Vec::new();
    let mut idx = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis) == basis.len() {
            idx.push(i);
        } else {
            basis.pop();
        }
    }
    idx
}

/// Solves the square system `A x = b` by rational Gaussian elimination.
/// Returns `None` when `A` is singular.
pub fn solve_square(a: &[Vector], b: &[Rat]) -> Option<Vector> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let pv = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &pv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let t = &m[i][j] - &f * &m[col][j];
                    m[i][j] = t;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Flattens the rank-one functional `y* ⊗ x` (entries `y*_i x_j`) row-major.
pub fn outer_flatten(y_star: &[Rat], x: &[Rat]) -> Vector {
    let mut out = Vec::with_capacity(y_star.len() * x.len());
    for yi in y_star {
        for xj in x {
            out.push(yi * xj);
        }
    }
    out
}
