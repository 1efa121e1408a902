//! Dense matrices over `GF(2^w)` with exact elimination. First-nonzero
//! pivoting throughout; the field is exact so there is no tolerance or
//! tie-breaking policy.

use alloc::vec;
use alloc::vec::Vec;

use super::{Field, FieldElement, GfError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, entries: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Matrix, GfError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(GfError::DimensionMismatch);
        }
        Ok(Matrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix, field: &Field) -> Result<Matrix, GfError> {
        if self.cols != rhs.rows {
            return Err(GfError::DimensionMismatch);
        }
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let add = field.mul(a, rhs.get(k, c));
                    out.set(r, c, field.add(out.get(r, c), add));
                }
            }
        }
        Ok(out)
    }

    /// Rank by forward elimination, first nonzero entry as pivot.
    pub fn rank(&self, field: &Field) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            let pivot = (rank..work.rows).find(|&r| !work.get(r, col).is_zero());
            let Some(pivot) = pivot else { continue };
            work.swap_rows(rank, pivot);
            let inv = field.inv(work.get(rank, col)).expect("pivot nonzero");
            work.scale_row(rank, inv, field);
            for r in 0..work.rows {
                if r != rank && !work.get(r, col).is_zero() {
                    let factor = work.get(r, col);
                    work.xor_scaled_row(r, rank, factor, field);
                }
            }
            rank += 1;
            if rank == work.rows {
                break;
            }
        }
        rank
    }

    /// Solves `self * x = b` for square full-rank `self`.
    pub fn solve(&self, b: &Matrix, field: &Field) -> Result<Matrix, GfError> {
        if self.rows != self.cols || b.rows != self.rows {
            return Err(GfError::DimensionMismatch);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(GfError::SingularMatrix)?;
            a.swap_rows(col, pivot);
            x.swap_rows(col, pivot);
            let inv = field.inv(a.get(col, col)).expect("pivot nonzero");
            a.scale_row(col, inv, field);
            x.scale_row(col, inv, field);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col);
                    a.xor_scaled_row(r, col, factor, field);
                    x.xor_scaled_row(r, col, factor, field);
                }
            }
        }
        Ok(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: FieldElement, field: &Field) {
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, field.mul(v, factor));
        }
    }

    /// `row[dst] ^= factor * row[src]`.
    fn xor_scaled_row(&mut self, dst: usize, src: usize, factor: FieldElement, field: &Field) {
        for c in 0..self.cols {
            let add = field.mul(factor, self.get(src, c));
            let v = self.get(dst, c);
            self.set(dst, c, field.add(v, add));
        }
    }
}
