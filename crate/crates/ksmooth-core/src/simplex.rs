//! Exact rational simplex for tiny linear programs.
//!
//! Maximizes c·x over { x free : A x ≤ b } with b ≥ 0, so the origin is an
//! initial basic feasible point after splitting the free variables into
//! positive and negative parts. Bland's rule keeps the pivoting cycle-free.
//! Problem sizes here are a few dozen variables and a couple hundred rows;
//! exactness matters, speed does not.

use crate::scalar::{rat, Rat};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SimplexError {
    #[error("negative right-hand side: origin is not feasible")]
    InfeasibleOrigin,
    #[error("inconsistent dimensions")]
    ShapeMismatch,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Unbounded,
}

/// Maximize `c·x` subject to `a x ≤ b`, `x` unrestricted in sign.
pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Result<LpOutcome, SimplexError> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(SimplexError::ShapeMismatch);
    }
    if b.iter().any(|x| x.is_negative()) {
        return Err(SimplexError::InfeasibleOrigin);
    }

    // columns: u_0..u_{n-1}, w_0..w_{n-1} (x = u - w), then m slacks
    let ncols = 2 * n + m;
    let mut tableau: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut r: Vec<Rat> = Vec::with_capacity(ncols + 1);
        r.extend(row.iter().cloned());
        r.extend(row.iter().map(|x| -x));
        for k in 0..m {
            r.push(if k == i { rat(1) } else { rat(0) });
        }
        r.push(b[i].clone());
        tableau.push(r);
    }
    // reduced-cost row
    let mut cost: Vec<Rat> = Vec::with_capacity(ncols + 1);
    cost.extend(c.iter().cloned());
    cost.extend(c.iter().map(|x| -x));
    cost.extend(std::iter::repeat_n(rat(0), m + 1));

    let mut basis: Vec<usize> = (2 * n..2 * n + m).collect();

    loop {
        // Bland: entering = lowest-index column with positive reduced cost
        let Some(enter) = (0..ncols).find(|&j| cost[j].is_positive()) else {
            break;
        };
        // ratio test, ties broken by smallest basic variable index
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if tableau[i][enter].is_positive() {
                let ratio = &tableau[i][ncols] / &tableau[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((piv_row, _)) = leave else {
            return Ok(LpOutcome::Unbounded);
        };
        pivot(&mut tableau, &mut cost, piv_row, enter, ncols);
        basis[piv_row] = enter;
    }

    let mut x = vec![rat(0); 2 * n];
    for (i, &bi) in basis.iter().enumerate() {
        if bi < 2 * n {
            x[bi] = tableau[i][ncols].clone();
        }
    }
    let point: Vec<Rat> = (0..n).map(|i| &x[i] - &x[i + n]).collect();
    let value = c.iter().zip(&point).map(|(ci, xi)| ci * xi).sum();
    Ok(LpOutcome::Optimal { value, point })
}

fn pivot(tableau: &mut [Vec<Rat>], cost: &mut [Rat], row: usize, col: usize, ncols: usize) {
    let pv = tableau[row][col].clone();
    for j in 0..=ncols {
        tableau[row][j] = &tableau[row][j] / &pv;
    }
    for i in 0..tableau.len() {
        if i != row && !tableau[i][col].is_zero() {
            let f = tableau[i][col].clone();
            for j in 0..=ncols {
                let t = &tableau[i][j] - &f * &tableau[row][j];
                tableau[i][j] = t;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for j in 0..=ncols {
            let t = &cost[j] - &f * &tableau[row][j];
            cost[j] = t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn box_constraints() {
        // max x + y over |x| ≤ 1, |y| ≤ 2
        let c = v(&[1, 1]);
        let a = vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])];
        let b = v(&[1, 1, 2, 2]);
        let out = maximize(&c, &a, &b).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(3),
                point: v(&[1, 2])
            }
        );
    }

    #[test]
    fn negative_direction() {
        // max -x over x ≥ -3 (i.e. -x ≤ 3), x ≤ 5
        let c = v(&[-1]);
        let a = vec![v(&[-1]), v(&[1])];
        let b = v(&[3, 5]);
        let out = maximize(&c, &a, &b).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(3),
                point: v(&[-3])
            }
        );
    }

    #[test]
    fn rational_optimum() {
        // max x subject to 2x ≤ 1, x + y ≤ 1, -y ≤ 0
        let c = v(&[1, 0]);
        let a = vec![v(&[2, 0]), v(&[1, 1]), v(&[0, -1])];
        let b = v(&[1, 1, 0]);
        match maximize(&c, &a, &b).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(1, 2)),
            _ => panic!("expected optimum"),
        }
    }

    #[test]
    fn unbounded_detected() {
        let c = v(&[1]);
        let a = vec![v(&[-1])];
        let b = v(&[0]);
        assert_eq!(maximize(&c, &a, &b).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_origin_terminates() {
        // several tight constraints at the origin; Bland must not cycle
        let c = v(&[1, 1, 1]);
        let a = vec![
            v(&[1, 0, 0]),
            v(&[0, 1, 0]),
            v(&[0, 0, 1]),
            v(&[1, 1, 0]),
            v(&[0, 1, 1]),
            v(&[1, 1, 1]),
        ];
        let b = v(&[0, 0, 1, 0, 0, 1]);
        match maximize(&c, &a, &b).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(0)),
            _ => panic!("expected optimum"),
        }
    }

    #[test]
    fn infeasible_origin_rejected() {
        assert_eq!(
            maximize(&v(&[1]), &[v(&[1])], &v(&[-1])),
            Err(SimplexError::InfeasibleOrigin)
        );
    }
}
