//! Dense univariate polynomials with exact coefficients, lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Polynomial<BigInt>;
pub type RatPolynomial = Polynomial<BigRational>;

impl<T: Clone + Num> Polynomial<T> {
    /// Coefficients in ascending degree; trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `X`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> T {
        self.coeffs.get(degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `p(X + c)`.
    pub fn compose_shift(&self, c: &T) -> Self {
        let linear = Self::new(vec![c.clone(), T::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| acc.mul(&linear).add(&Self::constant(a.clone())))
    }

    pub fn map<U: Clone + Num>(&self, f: impl FnMut(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl RatPolynomial {
    /// Newton-form interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Self {
        let n = points.len();
        let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x).collect();
        let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                table[i] = (table[i].clone() - table[i - 1].clone()) / (xs[i].clone() - xs[i - level].clone());
            }
        }
        let mut result = Self::zero();
        for i in (0..n).rev() {
            let factor = Self::new(vec![-xs[i].clone(), BigRational::one()]);
            result = result.mul(&factor).add(&Self::constant(table[i].clone()));
        }
        result
    }

    /// The integer polynomial with the same coefficients, if all are integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::new)
    }
}

impl IntPolynomial {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatPolynomial {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl<T: Clone + Num + Signed + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match deg {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "X")?,
                1 => write!(f, "{mag}X")?,
                _ if unit => write!(f, "X^{deg}")?,
                _ => write!(f, "{mag}X^{deg}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    #[test]
    fn normalization_and_degree() {
        let p = IntPolynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPolynomial::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn shift_composition() {
        // (X+1)^2 - 1 = X^2 + 2X
        let p = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert_eq!(p.compose_shift(&BigInt::one()), IntPolynomial::from_i64(&[0, 2, 1]));
        let back = p.compose_shift(&BigInt::one()).compose_shift(&-BigInt::one());
        assert_eq!(back, p);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = IntPolynomial::from_i64(&[-16, 24, -9, 1]).to_rational();
        let points: Vec<_> = (0..4).map(|x| (rat(x, 1), p.eval(&rat(x, 1)))).collect();
        assert_eq!(RatPolynomial::interpolate(&points), p);
        let q = RatPolynomial::new(vec![rat(-9, 4), rat(1, 1)]);
        let points: Vec<_> = (0..2).map(|x| (rat(x, 1), q.eval(&rat(x, 1)))).collect();
        assert_eq!(RatPolynomial::interpolate(&points), q);
        assert!(q.to_integer().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64(&[0, 9, -6, 1]).to_string(), "X^3 - 6X^2 + 9X");
        assert_eq!(IntPolynomial::from_i64(&[-2, 1]).to_string(), "X - 2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
