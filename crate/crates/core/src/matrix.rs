//! Dense exact matrices over big integers and rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = ExactMatrix<BigInt>;
pub type RatMatrix = ExactMatrix<BigRational>;

impl<T: Clone + Num> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `cols` fixes the width when there
    /// are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", bad.len())));
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        self.select(idx, idx)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix `selfᵗ · self`.
    pub fn gram(&self) -> Self {
        self.transpose().checked_mul(self).expect("gram dimensions agree")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `x·Id − self`.
    pub fn shifted_negation(&self, x: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            let diag = if i == j { x.clone() } else { T::zero() };
            diag - self.get(i, j).clone()
        })
    }
}

impl<T: Clone + Num> Mul for &ExactMatrix<T> {
    type Output = ExactMatrix<T>;

    fn mul(self, rhs: Self) -> ExactMatrix<T> {
        self.checked_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl<T: Clone + Num> Add for &ExactMatrix<T> {
    type Output = ExactMatrix<T>;

    fn add(self, rhs: Self) -> ExactMatrix<T> {
        self.checked_add(rhs).expect("matrix sum dimension mismatch")
    }
}

impl<T: Clone + Num> Sub for &ExactMatrix<T> {
    type Output = ExactMatrix<T>;

    fn sub(self, rhs: Self) -> ExactMatrix<T> {
        self.checked_sub(rhs).expect("matrix difference dimension mismatch")
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for &ExactMatrix<T> {
    type Output = ExactMatrix<T>;

    fn neg(self) -> ExactMatrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Debug for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<T: fmt::Display> fmt::Display for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let line: Vec<String> =
                (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
            .expect("rows have equal length")
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det_bareiss(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl RatMatrix {
    /// Row echelon form by exact Gaussian elimination; returns the reduced
    /// matrix, pivot columns and the sign/scale-free determinant factor.
    fn eliminate(&self) -> (Self, Vec<usize>, BigRational) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut det = BigRational::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                det = BigRational::zero();
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
                det = -det;
            }
            let pivot = a.get(r, c).clone();
            det *= pivot.clone();
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c).clone() / pivot.clone();
                for j in c..a.cols {
                    let v = a.get(i, j).clone() - factor.clone() * a.get(r, j).clone();
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1.len()
    }

    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let (_, pivots, det) = self.eliminate();
        Ok(if pivots.len() == self.rows { det } else { BigRational::zero() })
    }

    /// Solves `self · x = b` for every column of `b`. Requires independent
    /// columns; returns `None` when some column of `b` is outside the span.
    pub fn solve_columns(&self, b: &Self) -> Result<Option<Self>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!("solve with {} and {} rows", self.rows, b.rows)));
        }
        let aug = self.hstack(b)?;
        let (red, pivots, _) = aug.eliminate();
        let coefficient_pivots = pivots.iter().filter(|&&p| p < self.cols).count();
        if coefficient_pivots != self.cols {
            return Err(Error::DimensionMismatch("coefficient columns are dependent".into()));
        }
        if pivots.len() > coefficient_pivots {
            return Ok(None);
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            let pivot = red.get(r, c).clone();
            for j in 0..b.cols {
                x.set(c, j, red.get(r, self.cols + j).clone() / pivot.clone());
            }
        }
        Ok(Some(x))
    }
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
