//! Small dense linear algebra: exact rational elimination for the
//! combinatorial layers, and float Cholesky for the analytic layers.
//!
//! Everything here targets desk-scale dimensions (n ≤ ~8), so plain
//! Gaussian elimination with full pivot search is the right tool.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{Rat, RatVec};

/// Row-reduce a rational matrix in place; returns the pivot columns.
/// Rows are swapped and scaled to reduced row-echelon form.
pub fn rref(rows: &mut [RatVec]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[RatVec]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solve the square system `a * x = b` exactly. Errors on singular systems.
pub fn solve_square(a: &[RatVec], b: &[Rat]) -> Result<RatVec> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut aug: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Err(Error::SingularSystem);
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Ok(x)
}

/// Basis of the kernel of a rational matrix (columns are the unknowns).
pub fn kernel_basis(rows: &[RatVec]) -> Vec<RatVec> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::from_integer(1.into());
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `a * x = b` for a possibly non-square exact system; returns any
/// particular solution, or None when inconsistent.
pub fn solve_any(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let nrows = a.len();
    if nrows == 0 {
        return Some(vec![]);
    }
    let ncols = a[0].len();
    let mut aug: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None; // a pivot in the RHS column means 0 = 1
    }
    let mut x = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][ncols].clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Float side
// ---------------------------------------------------------------------------

/// Symmetric positive-definite solve via Cholesky. The matrix is row-major.
pub fn cholesky_solve(mat: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = mat.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = mat[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::DegenerateLattice {
                        detail: format!("Cholesky pivot {sum:.3e} at index {i}"),
                    });
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    // forward then back substitution
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut sum = rhs[i];
        for k in 0..i {
            sum -= l[i][k] * y[k];
        }
        y[i] = sum / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in i + 1..n {
            sum -= l[k][i] * x[k];
        }
        x[i] = sum / l[i][i];
    }
    Ok(x)
}

pub fn mat_vec(mat: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    mat.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
