//! Fraction-free elimination over an integral domain.
//!
//! Bareiss' one-step rule `a_ij <- (a_kk a_ij - a_ik a_kj) / p` with `p` the
//! previous pivot keeps every intermediate entry a minor of the input, so the
//! division is exact and entries stay polynomial.

use std::ops::{Mul, Neg, Sub};

use super::Matrix;
use crate::error::{Error, Result};
use crate::exact::{Field, Polynomial, Rational};

/// An integral domain with exact division.
pub trait Domain: Clone + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `self / d` when `d` divides `self`.
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

impl Domain for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::constant(<Rational as Field>::one())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        Polynomial::exact_div(self, d)
    }
}

impl Domain for Rational {
    fn zero() -> Self {
        Field::zero()
    }
    fn one() -> Self {
        Field::one()
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        Field::div(self, d).ok()
    }
}

pub fn determinant<D: Domain>(mut a: Matrix<D>) -> Result<D> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut sign_flip = false;
    let mut prev = D::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
            return Ok(D::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            sign_flip = !sign_flip;
        }
        let pivot = a.get(k, k).clone();
        for r in k + 1..n {
            let lead = a.get(r, k).clone();
            for c in k + 1..n {
                let v = pivot.clone() * a.get(r, c).clone() - lead.clone() * a.get(k, c).clone();
                let v = v.exact_div(&prev).ok_or_else(|| {
                    Error::Precondition("inexact Bareiss division; entries not in a domain".into())
                })?;
                a.data[r * n + c] = v;
            }
            a.data[r * n + k] = D::zero();
        }
        prev = pivot;
    }
    let det = if n == 0 { D::one() } else { a.get(n - 1, n - 1).clone() };
    Ok(if sign_flip { -det } else { det })
}

/// Rank by fraction-free row echelon reduction.
pub fn rank<D: Domain>(mut a: Matrix<D>) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = D::one();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let pivot = a.get(row, col).clone();
        for r in row + 1..rows {
            let lead = a.get(r, col).clone();
            for c in col + 1..cols {
                let v = pivot.clone() * a.get(r, c).clone() - lead.clone() * a.get(row, c).clone();
                // Dividing by a nonzero element never changes the rank, so an
                // inexact step just keeps the undivided value.
                let v = v.exact_div(&prev).unwrap_or(v);
                a.data[r * cols + c] = v;
            }
            a.data[r * cols + col] = D::zero();
        }
        prev = pivot;
        row += 1;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Rational::from).collect()).collect())
            .unwrap()
    }

    #[test]
    fn matches_gaussian_on_integers() {
        let m = q(vec![vec![2, 3, 1], vec![4, 1, -2], vec![0, 5, 7]]);
        assert_eq!(determinant(m.clone()).unwrap(), super::super::gauss_determinant(&m).unwrap());
        assert_eq!(determinant(m).unwrap(), Rational::from(-30));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = q(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(determinant(m).unwrap(), Rational::from(-2));
    }

    #[test]
    fn rank_skips_columns() {
        let m = q(vec![vec![0, 1, 2], vec![0, 2, 4], vec![0, 0, 1]]);
        assert_eq!(rank(m), 2);
    }

    #[test]
    fn polynomial_determinant() {
        let t = Polynomial::var;
        let one = Polynomial::constant(<Rational as Field>::one());
        // [[t1, t2], [t2, t1]] has det t1^2 - t2^2
        let m = Matrix::from_vec(2, 2, vec![t(1), t(2), t(2), t(1)]);
        assert_eq!(determinant(m).unwrap(), t(1) * t(1) - t(2) * t(2));
        let m = Matrix::from_vec(2, 2, vec![one.clone(), t(1), t(1), t(1) * t(1)]);
        assert_eq!(rank(m), 1);
    }
}
