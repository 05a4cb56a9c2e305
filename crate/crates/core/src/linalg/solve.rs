//! Incremental sparse row reduction.
//!
//! Rows live in a column space of `unknowns + rhs` slots; the trailing `rhs`
//! slots hold right-hand sides. Pivot rows are kept normalized (leading 1) and
//! only ever have entries to the right of their pivot.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

use super::{Matrix, SparseVec};

pub struct RowReducer {
    field: Field,
    unknowns: usize,
    rhs: usize,
    pivots: BTreeMap<usize, BTreeMap<usize, Scalar>>,
    inconsistent: bool,
}

impl RowReducer {
    pub fn new(field: Field, unknowns: usize, rhs: usize) -> RowReducer {
        RowReducer {
            field,
            unknowns,
            rhs,
            pivots: BTreeMap::new(),
            inconsistent: false,
        }
    }

    /// Add an equation. Returns true when it was independent of the previous ones.
    pub fn push(&mut self, row: SparseVec) -> bool {
        let mut row: BTreeMap<usize, Scalar> = row.entries().iter().cloned().collect();
        let mut cursor = 0;
        loop {
            let Some((&c, v)) = row.range(cursor..).next() else {
                break;
            };
            if c >= self.unknowns {
                break;
            }
            if let Some(p) = self.pivots.get(&c) {
                let coeff = v.clone();
                for (k, pv) in p {
                    let delta = &coeff * pv;
                    match row.get_mut(k) {
                        Some(slot) => {
                            *slot = &*slot - &delta;
                            if slot.is_zero() {
                                row.remove(k);
                            }
                        }
                        None => {
                            row.insert(*k, -delta);
                        }
                    }
                }
            }
            cursor = c + 1;
        }
        match row.iter().next() {
            None => false,
            Some((&c, _)) if c >= self.unknowns => {
                self.inconsistent = true;
                false
            }
            Some((&c, lead)) => {
                let inv = lead.inv().expect("nonzero pivot");
                let normalized = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
                self.pivots.insert(c, normalized);
                true
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Back-substitute to reduced row echelon form.
    pub fn reduce(self) -> Reduced {
        let mut done: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (&c, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            let later: Vec<usize> = row
                .keys()
                .copied()
                .filter(|k| *k != c && done.contains_key(k))
                .collect();
            for k in later {
                let coeff = row[&k].clone();
                for (j, pv) in &done[&k] {
                    let delta = &coeff * pv;
                    match row.get_mut(j) {
                        Some(slot) => {
                            *slot = &*slot - &delta;
                            if slot.is_zero() {
                                row.remove(j);
                            }
                        }
                        None => {
                            row.insert(*j, -delta);
                        }
                    }
                }
            }
            done.insert(c, row);
        }
        Reduced {
            field: self.field,
            unknowns: self.unknowns,
            rhs: self.rhs,
            rows: done,
            inconsistent: self.inconsistent,
        }
    }
}

/// Reduced row echelon form.
pub struct Reduced {
    field: Field,
    unknowns: usize,
    rhs: usize,
    rows: BTreeMap<usize, BTreeMap<usize, Scalar>>,
    inconsistent: bool,
}

impl Reduced {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.unknowns).filter(|c| !self.rows.contains_key(c)).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![self.field.zero(); self.unknowns];
                v[f] = self.field.one();
                for (&p, row) in &self.rows {
                    if let Some(x) = row.get(&f) {
                        v[p] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// Particular solution for right-hand side `k` (free variables set to 0).
    pub fn particular(&self, k: usize) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        let slot = self.unknowns + k;
        let mut v = vec![self.field.zero(); self.unknowns];
        for (&p, row) in &self.rows {
            if let Some(x) = row.get(&slot) {
                v[p] = x.clone();
            }
        }
        Some(v)
    }

    pub fn rhs_count(&self) -> usize {
        self.rhs
    }
}

/// Solution set of A X = B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Affine {
        /// cols(A) x cols(B)
        particular: Matrix,
        kernel: Vec<Vec<Scalar>>,
    },
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        matches!(self, Solution::Affine { kernel, .. } if kernel.is_empty())
    }
}

pub fn solve_linear(a: &Matrix, b: &Matrix) -> Result<Solution> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "A has {} rows but B has {}",
            a.rows(),
            b.rows()
        )));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let n = a.cols();
    let mut reducer = RowReducer::new(a.field(), n, b.cols());
    for i in 0..a.rows() {
        let terms = a
            .row(i)
            .iter()
            .cloned()
            .enumerate()
            .chain(b.row(i).iter().cloned().enumerate().map(|(j, v)| (n + j, v)));
        reducer.push(SparseVec::from_terms(terms));
    }
    let reduced = reducer.reduce();
    if reduced.is_inconsistent() {
        return Ok(Solution::Inconsistent);
    }
    let cols: Vec<Vec<Scalar>> = (0..b.cols())
        .map(|k| reduced.particular(k).expect("consistent"))
        .collect();
    Ok(Solution::Affine {
        particular: Matrix::from_columns(a.field(), n, &cols)?,
        kernel: reduced.kernel_basis(),
    })
}

/// Coordinates of each column of `targets` in the basis given by the
/// (independent) columns of `basis`; None when some target is outside the span.
pub fn coordinates(basis: &Matrix, targets: &Matrix) -> Result<Option<Matrix>> {
    match solve_linear(basis, targets)? {
        Solution::Inconsistent => Ok(None),
        Solution::Affine { particular, .. } => Ok(Some(particular)),
    }
}

/// Column spaces coincide (rank test on the concatenation).
pub fn same_column_space(a: &Matrix, b: &Matrix) -> Result<bool> {
    let ra = a.rank();
    let rb = b.rank();
    Ok(ra == rb && a.hstack(b)?.rank() == ra)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    #[test]
    fn identity_system() {
        let f = Field::Rationals;
        let sol = solve_linear(&Matrix::identity(f, 2), &Matrix::from_i64(f, &[&[1], &[2]])).unwrap();
        match sol {
            Solution::Affine { particular, kernel } => {
                assert_eq!(particular.column(0), vec![q(1), q(2)]);
                assert!(kernel.is_empty());
            }
            Solution::Inconsistent => panic!(),
        }
    }

    #[test]
    fn symmetric_kernel() {
        let f = Field::Rationals;
        let a = Matrix::from_i64(f, &[&[1, 1], &[1, 1]]);
        let sol = solve_linear(&a, &Matrix::zeros(f, 2, 1)).unwrap();
        match sol {
            Solution::Affine { kernel, .. } => {
                assert_eq!(kernel.len(), 1);
                // proportional to (1, -1)
                assert_eq!(&kernel[0][0] + &kernel[0][1], q(0));
                assert!(!kernel[0][0].is_zero());
            }
            Solution::Inconsistent => panic!(),
        }
    }

    #[test]
    fn degenerate_row_is_inconsistent() {
        let f = Field::Rationals;
        let a = Matrix::from_i64(f, &[&[1, 0], &[0, 0]]);
        let b = Matrix::from_i64(f, &[&[0], &[1]]);
        assert_eq!(solve_linear(&a, &b).unwrap(), Solution::Inconsistent);
        assert!(solve_linear(&a, &Matrix::zeros(f, 3, 1)).is_err());
    }

    #[test]
    fn column_space_equality() {
        let f = Field::Rationals;
        let a = Matrix::from_i64(f, &[&[1, 0], &[0, 1], &[0, 0]]);
        let b = Matrix::from_i64(f, &[&[1, 1], &[1, -1], &[0, 0]]);
        let c = Matrix::from_i64(f, &[&[1], &[0], &[1]]);
        assert!(same_column_space(&a, &b).unwrap());
        assert!(!same_column_space(&a, &c).unwrap());
    }
}
