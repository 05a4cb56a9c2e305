use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

use super::Matrix;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> SparseVec {
        SparseVec {
            entries: vec![(index, field.one())],
        }
    }

    /// Build from arbitrary (index, value) terms; duplicates are summed.
    pub fn from_terms<I: IntoIterator<Item = (usize, Scalar)>>(terms: I) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, v) in terms {
            acc.add(i, &v);
        }
        acc.finish()
    }

    pub fn from_dense(values: &[Scalar]) -> SparseVec {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, s: &Scalar) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * s)).collect(),
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        SparseVec::from_terms(self.entries.iter().chain(other.entries.iter()).cloned())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        SparseVec::from_terms(
            self.entries
                .iter()
                .cloned()
                .chain(other.entries.iter().map(|(i, v)| (*i, -v))),
        )
    }
}

/// Sums scalar terms by index, dropping cancellations.
#[derive(Debug, Clone, Default)]
pub struct Accumulator {
    slots: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Accumulator {
        Accumulator::default()
    }

    pub fn add(&mut self, index: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        match self.slots.get_mut(&index) {
            Some(slot) => *slot = &*slot + value,
            None => {
                self.slots.insert(index, value.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, v: &SparseVec, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(*i, &(x * s));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec {
            entries: self.slots.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }
}

/// Linear map stored column-wise: column j is the image of basis vector j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    field: Field,
    rows: usize,
    columns: Vec<SparseVec>,
}

impl LinMap {
    pub fn new(field: Field, rows: usize, columns: Vec<SparseVec>) -> Result<LinMap> {
        for (j, c) in columns.iter().enumerate() {
            if let Some((i, _)) = c.entries().last() {
                if *i >= rows {
                    return Err(Error::Dimension(format!(
                        "column {j} has entry at row {i} but the map has {rows} rows"
                    )));
                }
            }
            if let Some((_, v)) = c.entries().iter().find(|(_, v)| v.field() != field) {
                return Err(Error::FieldMismatch(field, v.field()));
            }
        }
        Ok(LinMap {
            field,
            rows,
            columns,
        })
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> LinMap {
        LinMap {
            field,
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> LinMap {
        LinMap {
            field,
            rows: n,
            columns: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    /// Permutation map sending basis vector j to basis vector perm[j].
    pub fn permutation(field: Field, perm: &[usize]) -> LinMap {
        LinMap {
            field,
            rows: perm.len(),
            columns: perm.iter().map(|&i| SparseVec::unit(i, field)).collect(),
        }
    }

    /// The flip V (x) W -> W (x) V.
    pub fn twist(field: Field, dim_v: usize, dim_w: usize) -> LinMap {
        let mut perm = vec![0; dim_v * dim_w];
        for i in 0..dim_v {
            for j in 0..dim_w {
                perm[i * dim_w + j] = j * dim_v + i;
            }
        }
        LinMap::permutation(field, &perm)
    }

    /// Row covector (1 x n map).
    pub fn covector(values: &[Scalar], field: Field) -> LinMap {
        LinMap {
            field,
            rows: 1,
            columns: values
                .iter()
                .map(|v| {
                    if v.is_zero() {
                        SparseVec::new()
                    } else {
                        SparseVec {
                            entries: vec![(0, v.clone())],
                        }
                    }
                })
                .collect(),
        }
    }

    /// Column vector viewed as a map k -> V.
    pub fn vector(values: &[Scalar], field: Field) -> LinMap {
        LinMap {
            field,
            rows: values.len(),
            columns: vec![SparseVec::from_dense(values)],
        }
    }

    pub fn from_matrix(m: &Matrix) -> LinMap {
        LinMap {
            field: m.field(),
            rows: m.rows(),
            columns: (0..m.cols()).map(|j| SparseVec::from_dense(&m.column(j))).collect(),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols());
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j].get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, x) in v.iter() {
            acc.add_scaled(&self.columns[*j], x);
        }
        acc.finish()
    }

    pub fn apply_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.apply(&SparseVec::from_dense(v)).to_dense(self.rows, self.field)
    }

    /// self . inner
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap> {
        if inner.rows != self.cols() {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows,
                self.cols(),
                inner.rows,
                inner.cols()
            )));
        }
        Ok(LinMap {
            field: self.field,
            rows: self.rows,
            columns: inner.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.same_shape(other)?;
        Ok(LinMap {
            field: self.field,
            rows: self.rows,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.same_shape(other)?;
        Ok(LinMap {
            field: self.field,
            rows: self.rows,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        LinMap {
            field: self.field,
            rows: self.rows,
            columns: self.columns.iter().map(|c| c.scale(s)).collect(),
        }
    }

    fn same_shape(&self, other: &LinMap) -> Result<()> {
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> LinMap {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[*i].push((j, v.clone()));
            }
        }
        LinMap {
            field: self.field,
            rows: self.cols(),
            columns: cols.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    /// Basis of the null space, computed from the rows.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut reducer = super::RowReducer::new(self.field, self.cols(), 0);
        for row in self.transpose().columns {
            reducer.push(row);
        }
        reducer.reduce().kernel_basis()
    }

    pub fn rank(&self) -> usize {
        let mut reducer = super::RowReducer::new(self.field, self.rows, 0);
        for c in &self.columns {
            reducer.push(c.clone());
        }
        reducer.rank()
    }

    /// First (column, row) where the two maps differ, with both values.
    pub fn first_difference(&self, other: &LinMap) -> Option<(usize, usize, Scalar, Scalar)> {
        for j in 0..self.cols().max(other.cols()) {
            let a = self.columns.get(j).cloned().unwrap_or_default();
            let b = other.columns.get(j).cloned().unwrap_or_default();
            if a != b {
                let diff = a.sub(&b);
                let (i, _) = diff.entries()[0];
                let av = a.get(i).cloned().unwrap_or_else(|| self.field.zero());
                let bv = b.get(i).cloned().unwrap_or_else(|| self.field.zero());
                return Some((j, i, av, bv));
            }
        }
        if self.rows != other.rows {
            return Some((0, 0, self.field.zero(), self.field.zero()));
        }
        None
    }

    /// Materialized Kronecker product (row-major index pairing).
    pub fn kron(factors: &[&LinMap]) -> LinMap {
        let field = factors[0].field;
        let rows = factors.iter().map(|f| f.rows).product();
        let cols: usize = factors.iter().map(|f| f.cols()).product();
        let columns = (0..cols)
            .map(|j| apply_kron(factors, &SparseVec::unit(j, field)))
            .collect();
        LinMap {
            field,
            rows,
            columns,
        }
    }
}

/// Apply f_1 (x) ... (x) f_r to a vector without materializing the product.
pub fn apply_kron(factors: &[&LinMap], v: &SparseVec) -> SparseVec {
    let col_dims: Vec<usize> = factors.iter().map(|f| f.cols()).collect();
    let row_dims: Vec<usize> = factors.iter().map(|f| f.rows).collect();
    let mut acc = Accumulator::new();
    let mut digits = vec![0usize; factors.len()];
    for (idx, x) in v.iter() {
        unflatten(*idx, &col_dims, &mut digits);
        // cartesian product of the selected columns
        let cols: Vec<&SparseVec> = factors
            .iter()
            .zip(&digits)
            .map(|(f, &d)| &f.columns[d])
            .collect();
        if cols.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut partial: Vec<(usize, Scalar)> = vec![(0, x.clone())];
        for (c, &rd) in cols.iter().zip(&row_dims) {
            let mut next = Vec::with_capacity(partial.len() * c.len());
            for (pi, pv) in &partial {
                for (ri, rv) in c.iter() {
                    next.push((pi * rd + ri, pv * rv));
                }
            }
            partial = next;
        }
        for (i, val) in partial {
            acc.add(i, &val);
        }
    }
    acc.finish()
}

/// Evaluate the composite stage_last . ... . stage_first, each stage a Kronecker product.
pub fn eval_chain(stages: &[Vec<&LinMap>]) -> Result<LinMap> {
    let first = &stages[0];
    let field = first[0].field;
    let domain: usize = first.iter().map(|f| f.cols()).product();
    for w in stages.windows(2) {
        let out: usize = w[0].iter().map(|f| f.rows).product();
        let inn: usize = w[1].iter().map(|f| f.cols()).product();
        if out != inn {
            return Err(Error::Dimension(format!(
                "chain stage produces dimension {out} but next stage expects {inn}"
            )));
        }
    }
    let rows: usize = stages.last().unwrap().iter().map(|f| f.rows).product();
    let mut columns = Vec::with_capacity(domain);
    for j in 0..domain {
        let mut v = SparseVec::unit(j, field);
        for stage in stages {
            if v.is_empty() {
                break;
            }
            v = apply_kron(stage, &v);
        }
        columns.push(v);
    }
    Ok(LinMap {
        field,
        rows,
        columns,
    })
}

/// Row-major flattening of a multi-index.
pub fn flatten(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

pub fn unflatten(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_is_row_major() {
        assert_eq!(flatten(&[1, 2, 3], &[2, 3, 4]), 12 + 2 * 4 + 3);
        let mut d = [0; 3];
        unflatten(23, &[2, 3, 4], &mut d);
        assert_eq!(d, [1, 2, 3]);
    }

    #[test]
    fn twist_swaps_legs() {
        let f = Field::Rationals;
        let t = LinMap::twist(f, 2, 3);
        // e_1 (x) e_2 = index 1*3+2 = 5 maps to e_2 (x) e_1 = 2*2+1 = 5
        assert_eq!(t.apply(&SparseVec::unit(5, f)), SparseVec::unit(5, f));
        assert_eq!(t.apply(&SparseVec::unit(1, f)), SparseVec::unit(2, f));
        let back = LinMap::twist(f, 3, 2).compose(&t).unwrap();
        assert_eq!(back, LinMap::identity(f, 6));
    }

    #[test]
    fn lazy_kron_matches_materialized() {
        let f = Field::Rationals;
        let a = LinMap::from_matrix(&Matrix::from_i64(f, &[&[1, 2], &[0, 3]]));
        let b = LinMap::from_matrix(&Matrix::from_i64(f, &[&[0, 1, 1], &[5, 0, -1]]));
        let k = LinMap::kron(&[&a, &b]);
        assert_eq!(k.to_matrix(), a.to_matrix().kron(&b.to_matrix()));
        let chain = eval_chain(&[vec![&a, &b], vec![&LinMap::identity(f, 4)]]).unwrap();
        assert_eq!(chain, k);
    }
}
