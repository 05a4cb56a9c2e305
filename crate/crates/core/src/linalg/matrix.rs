use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

use super::solve::RowReducer;
use super::SparseVec;

/// Dense row-major matrix over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!("row {i} has length {} not {c}", row.len())));
            }
            for v in row {
                if v.field() != field {
                    return Err(Error::FieldMismatch(field, v.field()));
                }
                data.push(v);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {} not {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
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
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product; row index i_A * rows(B) + i_B, likewise for columns.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a.is_zero() {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        let b = other.get(ib, jb);
                        if !b.is_zero() {
                            out.set(ia * other.rows + ib, ja * other.cols + jb, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn checked_kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(self.kron(other))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension("row count mismatch in hstack".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_columns(self.field, self.rows, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    fn reducer(&self) -> RowReducer {
        let mut r = RowReducer::new(self.field, self.cols, 0);
        for i in 0..self.rows {
            r.push(SparseVec::from_dense(self.row(i)));
        }
        r
    }

    /// Exact rank by sparse Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.reducer().rank()
    }

    /// Basis of the null space {x : A x = 0}.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.reducer().reduce().kernel_basis()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let f = Field::Rationals;
        assert_eq!(Matrix::identity(f, 4).rank(), 4);
        assert_eq!(Matrix::zeros(f, 3, 5).rank(), 0);
        assert_eq!(Matrix::from_i64(f, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kron_examples() {
        let f = Field::Rationals;
        assert_eq!(Matrix::identity(f, 2).kron(&Matrix::identity(f, 3)), Matrix::identity(f, 6));
        let b = Matrix::from_i64(f, &[&[1, -1], &[3, 0]]);
        let two = Matrix::from_i64(f, &[&[2]]);
        assert_eq!(two.kron(&b), b.scale(&f.from_i64(2)));
        let k = Matrix::zeros(f, 2, 3).kron(&Matrix::zeros(f, 4, 5));
        assert_eq!((k.rows(), k.cols()), (8, 15));
        let g = Matrix::identity(Field::Cyclotomic(3), 2);
        assert!(matches!(b.checked_kron(&g), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn trace_and_product() {
        let f = Field::Rationals;
        let a = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.trace(), f.from_i64(5));
        let sq = a.matmul(&a).unwrap();
        assert_eq!(sq, Matrix::from_i64(f, &[&[7, 10], &[15, 22]]));
        assert!(a.matmul(&Matrix::zeros(f, 3, 1)).is_err());
    }
}
