//! Sparse multi-index tensors and labelled contraction.
//!
//! A contraction plan names each tensor leg with a label; labels shared
//! between terms are summed over unless they appear in the output.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseTensor {
    field: Field,
    dims: Vec<usize>,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

/// Rank-3 tensor of structure constants.
pub type Tensor3 = SparseTensor;

impl SparseTensor {
    pub fn new(field: Field, dims: Vec<usize>) -> SparseTensor {
        SparseTensor {
            field,
            dims,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I>(field: Field, dims: Vec<usize>, entries: I) -> Result<SparseTensor>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut t = SparseTensor::new(field, dims);
        for (idx, v) in entries {
            if idx.len() != t.dims.len() || idx.iter().zip(&t.dims).any(|(i, d)| i >= d) {
                return Err(Error::Dimension(format!(
                    "index {idx:?} out of range for dims {:?}",
                    t.dims
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch(field, v.field()));
            }
            if t.entries.contains_key(&idx) {
                return Err(Error::Dimension(format!("duplicate index {idx:?}")));
            }
            if !v.is_zero() {
                t.entries.insert(idx, v);
            }
        }
        Ok(t)
    }

    pub fn vector(values: &[Scalar], field: Field) -> SparseTensor {
        let mut t = SparseTensor::new(field, vec![values.len()]);
        for (i, v) in values.iter().enumerate() {
            t.add(vec![i], v);
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.entries.get(idx).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&mut self, idx: Vec<usize>, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let sum = match self.entries.get(&idx) {
            Some(old) => old + v,
            None => v.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sub(&self, other: &SparseTensor) -> Result<SparseTensor> {
        if self.dims != other.dims {
            return Err(Error::Dimension(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            out.add(idx.clone(), &(-v));
        }
        Ok(out)
    }

    /// Reorder legs: result leg k is source leg perm[k].
    pub fn permute(&self, perm: &[usize]) -> SparseTensor {
        let dims = perm.iter().map(|&p| self.dims[p]).collect();
        let entries = self
            .entries
            .iter()
            .map(|(idx, v)| (perm.iter().map(|&p| idx[p]).collect(), v.clone()))
            .collect();
        SparseTensor {
            field: self.field,
            dims,
            entries,
        }
    }
}

/// One factor of a contraction plan: a tensor with a label per leg.
#[derive(Debug, Clone)]
pub struct Term<'a> {
    pub tensor: &'a SparseTensor,
    pub labels: Vec<String>,
}

impl<'a> Term<'a> {
    pub fn new(tensor: &'a SparseTensor, labels: &str) -> Term<'a> {
        Term {
            tensor,
            labels: labels.split_whitespace().map(str::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone)]
struct Partial {
    labels: Vec<String>,
    dims: Vec<usize>,
    entries: HashMap<Vec<usize>, Scalar>,
}

impl Partial {
    fn from_term(term: &Term<'_>) -> Partial {
        // repeated labels inside one term select the diagonal
        let mut labels: Vec<String> = Vec::new();
        let mut dims = Vec::new();
        let mut source: Vec<usize> = Vec::new();
        for (k, l) in term.labels.iter().enumerate() {
            if !labels.contains(l) {
                labels.push(l.clone());
                dims.push(term.tensor.dims[k]);
                source.push(k);
            }
        }
        let mut entries: HashMap<Vec<usize>, Scalar> = HashMap::new();
        'entry: for (idx, v) in term.tensor.entries() {
            for (k, l) in term.labels.iter().enumerate() {
                let first = term.labels.iter().position(|x| x == l).unwrap();
                if idx[k] != idx[first] {
                    continue 'entry;
                }
            }
            let key: Vec<usize> = source.iter().map(|&k| idx[k]).collect();
            accumulate(&mut entries, key, v.clone());
        }
        Partial {
            labels,
            dims,
            entries,
        }
    }

    /// Sum out every label not in `keep`.
    fn reduce_to(self, keep: &[String]) -> Partial {
        let kept: Vec<usize> = (0..self.labels.len())
            .filter(|&k| keep.contains(&self.labels[k]))
            .collect();
        if kept.len() == self.labels.len() {
            return self;
        }
        let mut entries = HashMap::new();
        for (idx, v) in self.entries {
            accumulate(&mut entries, kept.iter().map(|&k| idx[k]).collect(), v);
        }
        Partial {
            labels: kept.iter().map(|&k| self.labels[k].clone()).collect(),
            dims: kept.iter().map(|&k| self.dims[k]).collect(),
            entries,
        }
    }

    fn join(&self, other: &Partial, keep: &[String]) -> Partial {
        let shared: Vec<(usize, usize)> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| other.labels.iter().position(|x| x == l).map(|j| (i, j)))
            .collect();
        let mut labels = self.labels.clone();
        let mut dims = self.dims.clone();
        let other_only: Vec<usize> = (0..other.labels.len())
            .filter(|j| !shared.iter().any(|(_, s)| s == j))
            .collect();
        for &j in &other_only {
            labels.push(other.labels[j].clone());
            dims.push(other.dims[j]);
        }
        let kept: Vec<usize> = (0..labels.len()).filter(|&k| keep.contains(&labels[k])).collect();

        let mut buckets: HashMap<Vec<usize>, Vec<(&Vec<usize>, &Scalar)>> = HashMap::new();
        for (idx, v) in &other.entries {
            let key = shared.iter().map(|&(_, j)| idx[j]).collect();
            buckets.entry(key).or_default().push((idx, v));
        }
        let mut entries = HashMap::new();
        for (idx, v) in &self.entries {
            let key: Vec<usize> = shared.iter().map(|&(i, _)| idx[i]).collect();
            let Some(matches) = buckets.get(&key) else {
                continue;
            };
            for (oidx, ov) in matches {
                let mut full = idx.clone();
                full.extend(other_only.iter().map(|&j| oidx[j]));
                let out_key = kept.iter().map(|&k| full[k]).collect();
                accumulate(&mut entries, out_key, v * ov);
            }
        }
        Partial {
            labels: kept.iter().map(|&k| labels[k].clone()).collect(),
            dims: kept.iter().map(|&k| dims[k]).collect(),
            entries,
        }
    }
}

fn accumulate(map: &mut HashMap<Vec<usize>, Scalar>, key: Vec<usize>, v: Scalar) {
    match map.get_mut(&key) {
        Some(slot) => *slot = &*slot + &v,
        None => {
            map.insert(key, v);
        }
    }
}

/// Evaluate a contraction plan. `order` gives the sequence in which terms are
/// absorbed (defaults to the listed order); the result does not depend on it.
pub fn contract(terms: &[Term<'_>], output: &[&str], order: Option<&[usize]>) -> Result<SparseTensor> {
    if terms.is_empty() {
        return Err(Error::Dimension("empty contraction plan".into()));
    }
    let field = terms[0].tensor.field;
    let mut label_dims: HashMap<&str, usize> = HashMap::new();
    for t in terms {
        if t.labels.len() != t.tensor.rank() {
            return Err(Error::Dimension(format!(
                "{} labels for a rank-{} tensor",
                t.labels.len(),
                t.tensor.rank()
            )));
        }
        if t.tensor.field != field {
            return Err(Error::FieldMismatch(field, t.tensor.field));
        }
        for (l, &d) in t.labels.iter().zip(&t.tensor.dims) {
            if let Some(&prev) = label_dims.get(l.as_str()) {
                if prev != d {
                    return Err(Error::Dimension(format!(
                        "label {l:?} has dimension {prev} and {d}"
                    )));
                }
            } else {
                label_dims.insert(l, d);
            }
        }
    }
    for o in output {
        if !label_dims.contains_key(o) {
            return Err(Error::UnboundIndex(o.to_string()));
        }
    }
    let default: Vec<usize> = (0..terms.len()).collect();
    let order = order.unwrap_or(&default);
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != default {
        return Err(Error::Dimension("contraction order is not a permutation".into()));
    }

    let keep_after = |absorbed: usize| -> Vec<String> {
        let mut keep: Vec<String> = output.iter().map(|s| s.to_string()).collect();
        for &t in &order[absorbed..] {
            keep.extend(terms[t].labels.iter().cloned());
        }
        keep
    };

    let mut acc = Partial::from_term(&terms[order[0]]).reduce_to(&keep_after(1));
    for (step, &t) in order.iter().enumerate().skip(1) {
        let next = Partial::from_term(&terms[t]);
        acc = acc.join(&next, &keep_after(step + 1));
    }
    let acc = acc.reduce_to(&output.iter().map(|s| s.to_string()).collect::<Vec<_>>());

    let perm: Vec<usize> = output
        .iter()
        .map(|o| acc.labels.iter().position(|l| l == o).expect("output label kept"))
        .collect();
    let dims = output.iter().map(|o| label_dims[o]).collect();
    let mut out = SparseTensor::new(field, dims);
    for (idx, v) in acc.entries {
        if !v.is_zero() {
            out.entries.insert(perm.iter().map(|&p| idx[p]).collect(), v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ident(f: Field, n: usize) -> SparseTensor {
        SparseTensor::from_entries(f, vec![n, n], (0..n).map(|i| (vec![i, i], f.one()))).unwrap()
    }

    #[test]
    fn identity_contracts_to_identity() {
        let f = Field::Rationals;
        let i = ident(f, 3);
        let r = contract(&[Term::new(&i, "a b"), Term::new(&i, "b c")], &["a", "c"], None).unwrap();
        assert_eq!(r, i);
    }

    #[test]
    fn unbound_and_inconsistent_labels() {
        let f = Field::Rationals;
        let i = ident(f, 3);
        let j = ident(f, 2);
        assert!(matches!(
            contract(&[Term::new(&i, "a b")], &["z"], None),
            Err(Error::UnboundIndex(_))
        ));
        assert!(matches!(
            contract(&[Term::new(&i, "a b"), Term::new(&j, "b c")], &["a", "c"], None),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn trace_by_repeated_label() {
        let f = Field::Rationals;
        let i = ident(f, 4);
        let r = contract(&[Term::new(&i, "a a")], &[], None).unwrap();
        assert_eq!(r.get(&[]), f.from_i64(4));
    }
}
