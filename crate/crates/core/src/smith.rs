//! Smith normal form over the integers.
//!
//! Produces unimodular `left` and `right` with `left · m · right = diag(d_1,
//! …, d_r, 0, …)`, `d_i > 0` and `d_i | d_{i+1}`. Pivots are the smallest
//! nonzero entry in magnitude.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Diagonal of the normal form, length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }

    /// Product of the nonzero invariant factors.
    pub fn torsion_product(&self) -> BigInt {
        self.invariant_factors().iter().product()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.left] {
            let src = m[j].clone();
            for (x, s) in m[i].iter_mut().zip(src) {
                *x += q * s;
            }
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.right] {
            for row in m.iter_mut() {
                let s = row[j].clone();
                row[i] += q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.left] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: to_rows(m),
        left: to_rows(&IntMatrix::identity(rows)),
        right: to_rows(&IntMatrix::identity(cols)),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = smallest_in_cross(&w.a, t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            let pivot = w.a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        rank += 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| w.a[i][i].clone()).collect();
    let left = IntMatrix::from_rows(w.left, rows).expect("square transform");
    let right = IntMatrix::from_rows(w.right, cols).expect("square transform");
    SnfResult { diagonal, rank, left, right }
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (at or after `t`).
fn smallest_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs: Option<BigInt> = None;
    let mut consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = &a[i][j];
        if !x.is_zero() && best_abs.as_ref().is_none_or(|b| &x.abs() < b) {
            best_abs = Some(x.abs());
            *best = (i, j);
        }
    };
    for i in t..a.len() {
        consider(i, t, &mut best);
    }
    for j in t..a[t].len() {
        consider(t, j, &mut best);
    }
    best
}

/// Integral basis of the kernel of `m`, as the columns of the returned
/// matrix (`m.cols() × nullity`).
pub fn integer_kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let cols: Vec<usize> = (snf.rank..m.cols()).collect();
    snf.right.select_columns(&cols)
}

/// Exact integer solution `x` of `m · x = b` for each column of `b`, or
/// `None` if some column has no integer solution.
pub fn solve_integer(m: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    if m.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!("solve with {} and {} rows", m.rows(), b.rows())));
    }
    let snf = smith_normal_form(m);
    let pb = &snf.left * b;
    let mut y = IntMatrix::zeros(m.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..m.rows() {
            let target = pb.get(i, j);
            if i < snf.rank {
                let (q, r) = target.div_rem(&snf.diagonal[i]);
                if !r.is_zero() {
                    return Ok(None);
                }
                y.set(i, j, q);
            } else if !target.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(&snf.right * &y))
}
