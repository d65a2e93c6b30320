//! Dense matrices over `F_q` and Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::subspace::Subspace;

/// A row-major matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows<R: AsRef<[u32]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut m = Self::zeros(0, cols);
        for r in rows {
            m.push_row(r.as_ref())?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: &[u32]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} pushed onto a matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Columns `range` of every row.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix {
        let mut m = Matrix::zeros(self.rows, range.len());
        for i in 0..self.rows {
            m.row_mut(i).copy_from_slice(&self.row(i)[range.clone()]);
        }
        m
    }

    pub fn mul(&self, gf: &BaseField, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                axpy(gf, out.row_mut(i), a, other.row(k));
            }
        }
        Ok(out)
    }

    /// The row vector `v * self`.
    pub fn left_mul(&self, gf: &BaseField, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                axpy(gf, &mut out, c, self.row(i));
            }
        }
        Ok(out)
    }

    /// Reduces to reduced row echelon form in place and returns the pivot
    /// columns. Zero rows end up at the bottom.
    pub fn rref_in_place(&mut self, gf: &BaseField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = gf.inv(self.get(r, c)).expect("pivot is nonzero");
            for x in self.row_mut(r) {
                *x = gf.mul(*x, inv);
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f != 0 {
                    axpy(gf, self.row_mut(i), gf.neg(f), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self, gf: &BaseField) -> Matrix {
        let mut m = self.clone();
        m.rref_in_place(gf);
        m
    }

    pub fn rank(&self, gf: &BaseField) -> usize {
        self.clone().rref_in_place(gf).len()
    }

    /// `{v : self * v^T = 0}` as a subspace of `F_q^cols`.
    pub fn kernel(&self, gf: &BaseField) -> Subspace {
        let mut r = self.clone();
        let pivots = r.rref_in_place(gf);
        let mut basis = Matrix::zeros(0, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = gf.neg(r.get(i, free));
            }
            basis.push_row(&v).expect("row length matches");
        }
        Subspace::row_space(gf, &basis)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn truncate_rows(&mut self, rows: usize) {
        self.rows = rows.min(self.rows);
        self.data.truncate(self.rows * self.cols);
    }
}

/// `y += a * x`.
#[inline]
pub(crate) fn axpy(gf: &BaseField, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 1 {
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = gf.add(*yi, xi);
        }
    } else {
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = gf.add(*yi, gf.mul(a, xi));
            }
        }
    }
}
