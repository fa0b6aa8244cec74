//! Dense exact linear algebra over any [`Field`].
//!
//! Matrices act on column vectors: an `r x c` matrix is a map `F^c -> F^r`.
//! Pivots are chosen as the first nonzero entry in column order, so every
//! basis produced here is deterministic.

pub mod bareiss;

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Field;

/// Row-major dense matrix. `0 x n` and `n x 0` shapes are allowed.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F> Matrix<F> {
    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<F> {
        self.data
    }

    pub fn map<G>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<F: Clone> Matrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(Matrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Column matrix from a vector.
    pub fn column(v: Vec<F>) -> Self {
        let n = v.len();
        Matrix { rows: n, cols: 1, data: v }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn scalar(n: usize, s: F) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { s.clone() } else { F::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(F::zero(), |acc, i| {
                acc + self.get(r, i).clone() * rhs.get(i, c).clone()
            })
        }))
    }

    pub fn apply(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn determinant(&self) -> Result<F> {
        determinant(self)
    }
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[] ({}x{})", self.rows, self.cols);
        }
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| (0..self.rows).map(|r| cells[r * self.cols + c].len()).max().unwrap_or(0))
            .collect();
        for r in 0..self.rows {
            f.write_str("[ ")?;
            for c in 0..self.cols {
                write!(f, "{:>w$}", cells[r * self.cols + c], w = widths[c])?;
                f.write_str(if c + 1 == self.cols { " ]" } else { "  " })?;
            }
            if r + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.data.chunks(self.cols.max(1)).take(self.rows)).finish()
    }
}

/// Reduced row echelon form and the strictly increasing pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a.get(row, col).inv().expect("pivot is nonzero");
        for c in 0..a.cols {
            let v = a.data[row * a.cols + c].clone() * inv.clone();
            a.data[row * a.cols + c] = v;
        }
        for r in 0..a.rows {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in 0..a.cols {
                let v = a.get(r, c).clone() - factor.clone() * a.get(row, c).clone();
                a.data[r * a.cols + c] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    F::rank_of(m)
}

pub fn determinant<F: Field>(m: &Matrix<F>) -> Result<F> {
    F::determinant_of(m)
}

/// Determinant by Gaussian elimination with division.
pub fn gauss_determinant<F: Field>(m: &Matrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
            return Ok(F::zero());
        };
        if p != col {
            a.swap_rows(p, col);
            det = -det;
        }
        let pivot = a.get(col, col).clone();
        let inv = pivot.inv()?;
        det = det * pivot;
        for r in col + 1..n {
            if a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone() * inv.clone();
            for c in col..n {
                let v = a.get(r, c).clone() - factor.clone() * a.get(col, c).clone();
                a.data[r * n + c] = v;
            }
        }
    }
    Ok(det)
}

/// Basis of the null space `{v : m v = 0}`, one vector per free column.
///
/// The vector for free column `f` has a `1` at `f` and `0` at every other free
/// column, so a kernel element's coordinates in this basis are its entries at
/// the free columns (see [`free_columns`]).
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    free_columns(m.cols, &pivots)
        .into_iter()
        .map(|f| {
            let mut v = vec![F::zero(); m.cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            v
        })
        .collect()
}

/// Columns of `0..cols` that are not pivots.
pub fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    (0..cols).filter(|c| !pivots.contains(c)).collect()
}

/// Cokernel of `m: F^cols -> F^rows`, presented on the coordinates of
/// `F^rows` that are not pivots of the column space.
#[derive(Debug, Clone, PartialEq)]
pub struct Cokernel<F> {
    /// `(rows - rank) x rows`; annihilates the image of `m`.
    pub projection: Matrix<F>,
    /// Coordinates of `F^rows` whose unit vectors map to the quotient basis.
    pub representatives: Vec<usize>,
}

impl<F: Field> Cokernel<F> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Representatives as vectors of `F^rows`.
    pub fn representative_vectors(&self) -> Vec<Vec<F>> {
        let n = self.projection.cols();
        self.representatives
            .iter()
            .map(|&j| (0..n).map(|i| if i == j { F::one() } else { F::zero() }).collect())
            .collect()
    }
}

pub fn cokernel_basis<F: Field>(m: &Matrix<F>) -> Cokernel<F> {
    // Row space of the transpose is the column space of m.
    let (r, pivots) = rref(&m.transpose());
    let reps = free_columns(m.rows, &pivots);
    let projection = Matrix::from_fn(reps.len(), m.rows, |j, c| {
        if c == reps[j] {
            F::one()
        } else if let Some(i) = pivots.iter().position(|&p| p == c) {
            -r.get(i, reps[j]).clone()
        } else {
            F::zero()
        }
    });
    Cokernel { projection, representatives: reps }
}

/// Remove one row and one column (0-based).
pub fn delete_row_col<F: Clone>(m: &Matrix<F>, row: usize, col: usize) -> Result<Matrix<F>> {
    if row >= m.rows || col >= m.cols {
        return Err(Error::IndexOutOfRange(format!(
            "row {row}, column {col} of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let rows: Vec<usize> = (0..m.rows).filter(|&r| r != row).collect();
    let cols: Vec<usize> = (0..m.cols).filter(|&c| c != col).collect();
    Ok(m.select(&rows, &cols))
}
