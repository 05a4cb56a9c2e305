//! Subspaces of a Hopf algebra: closure certificates, generated subalgebras,
//! skew-primitives and group-like elements.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, Accumulator, LinMap, Matrix, RowReducer, Solution, SparseVec};
use crate::scalars::Scalar;
use crate::yd::YdData;

use super::{Hopf, HopfData};

/// Coordinates with respect to the columns of a full-rank basis matrix.
#[derive(Debug, Clone)]
pub(crate) struct SpanCoords {
    basis: Matrix,
    pivots: Vec<usize>,
    inv: Matrix,
}

impl SpanCoords {
    pub(crate) fn new(basis: &Matrix) -> Result<SpanCoords> {
        let d = basis.cols();
        let mut reducer = RowReducer::new(basis.field(), d, 0);
        let mut pivots = Vec::with_capacity(d);
        for i in 0..basis.rows() {
            if pivots.len() == d {
                break;
            }
            if reducer.push(SparseVec::from_dense(basis.row(i))) {
                pivots.push(i);
            }
        }
        if pivots.len() != d {
            return Err(Error::Dimension(format!(
                "basis columns are dependent (rank {} < {d})",
                pivots.len()
            )));
        }
        let square = Matrix::from_rows(basis.field(), pivots.iter().map(|&i| basis.row(i).to_vec()).collect())
            .unwrap_or_else(|_| Matrix::zeros(basis.field(), 0, 0));
        let inv = match solve_linear(&square, &Matrix::identity(basis.field(), d))? {
            Solution::Affine { particular, .. } => particular,
            Solution::Inconsistent => unreachable!("pivot rows are independent"),
        };
        Ok(SpanCoords {
            basis: basis.clone(),
            pivots,
            inv,
        })
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of v, or None when v is outside the span.
    pub(crate) fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let picked: Vec<Scalar> = self.pivots.iter().map(|&i| v[i].clone()).collect();
        let c = self.inv.apply(&picked);
        (self.basis.apply(&c) == v).then_some(c)
    }

    /// Coordinates of w in span (x) span, w given as a flattened n^2 vector.
    pub(crate) fn coords_tensor(&self, w: &SparseVec) -> Option<Vec<Scalar>> {
        let n = self.basis.rows();
        let d = self.dim();
        let f = self.basis.field();
        let mut pos = vec![usize::MAX; n];
        for (k, &p) in self.pivots.iter().enumerate() {
            pos[p] = k;
        }
        let mut picked = Matrix::zeros(f, d, d);
        for (ij, v) in w.iter() {
            let (pi, pj) = (pos[ij / n], pos[ij % n]);
            if pi != usize::MAX && pj != usize::MAX {
                picked.set(pi, pj, v.clone());
            }
        }
        // inv * picked * inv^T gives the coefficient matrix
        let c = self.inv.matmul(&picked).ok()?.matmul(&self.inv.transpose()).ok()?;
        let mut acc = Accumulator::new();
        for p in 0..d {
            for q in 0..d {
                let x = c.get(p, q);
                if x.is_zero() {
                    continue;
                }
                for a in 0..n {
                    let ba = self.basis.get(a, p);
                    if ba.is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        let bb = self.basis.get(b, q);
                        if !bb.is_zero() {
                            acc.add(a * n + b, &(&(x * ba) * bb));
                        }
                    }
                }
            }
        }
        if acc.finish() != *w {
            return None;
        }
        let mut out = Vec::with_capacity(d * d);
        for p in 0..d {
            for q in 0..d {
                out.push(c.get(p, q).clone());
            }
        }
        Some(out)
    }
}

/// Closure tests, each set only when the test passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificates {
    pub contains_unit: bool,
    pub mult_closed: bool,
    pub comult_closed: bool,
    pub antipode_stable: bool,
    /// Homogeneous and action-stable; always true without a YD context.
    pub yd_stable: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.contains_unit && self.mult_closed && self.comult_closed && self.antipode_stable && self.yd_stable
    }
}

/// A subspace of a parent Hopf algebra, given by independent basis columns.
#[derive(Debug, Clone)]
pub struct SubHopf {
    parent: Hopf,
    basis: Matrix,
    certificates: Certificates,
    coords: SpanCoords,
}

impl SubHopf {
    pub fn new(parent: &Hopf, basis: Matrix) -> Result<SubHopf> {
        if basis.rows() != parent.dim() {
            return Err(Error::Dimension(format!(
                "subspace basis has {} rows, parent has dimension {}",
                basis.rows(),
                parent.dim()
            )));
        }
        if basis.field() != parent.field() {
            return Err(Error::FieldMismatch(parent.field(), basis.field()));
        }
        let coords = SpanCoords::new(&basis)?;
        let certificates = certify(parent, &basis, &coords);
        let mut sub = SubHopf {
            parent: parent.clone(),
            basis,
            certificates,
            coords,
        };
        if parent.yd().is_some() && certificates.yd_stable {
            sub.rebase_homogeneous()?;
        }
        Ok(sub)
    }

    /// Replace the basis by one made of homogeneous vectors with the same span.
    fn rebase_homogeneous(&mut self) -> Result<()> {
        let yd = self.parent.yd().expect("YD context");
        let f = self.parent.field();
        let n = self.parent.dim();
        if (0..self.basis.cols()).all(|j| homogeneous_components(yd, &self.basis.column(j)).len() <= 1) {
            return Ok(());
        }
        let mut reducer = RowReducer::new(f, n, 0);
        let mut cols = Vec::new();
        for j in 0..self.basis.cols() {
            for comp in homogeneous_components(yd, &self.basis.column(j)) {
                if reducer.push(SparseVec::from_dense(&comp)) {
                    cols.push(comp);
                }
            }
        }
        self.basis = Matrix::from_columns(f, n, &cols)?;
        self.coords = SpanCoords::new(&self.basis)?;
        Ok(())
    }

    pub fn parent(&self) -> &Hopf {
        &self.parent
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn certificates(&self) -> Certificates {
        self.certificates
    }

    pub fn is_sub_hopf(&self) -> bool {
        self.certificates.all()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.parent.dim() && self.coords.coords(v).is_some()
    }

    /// Coordinates of a parent vector in the subspace basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.coords.coords(v)
    }

    /// Same column space as another subspace of the same parent.
    pub fn same_span(&self, other: &SubHopf) -> bool {
        self.dim() == other.dim() && (0..other.dim()).all(|j| self.contains(&other.basis.column(j)))
    }

    /// The restricted structure as a Hopf algebra in its own right.
    pub fn to_hopf(&self) -> Result<Hopf> {
        if !self.is_sub_hopf() {
            return Err(Error::Structural(format!(
                "subspace is not a sub-Hopf algebra: {:?}",
                self.certificates
            )));
        }
        let p = &self.parent;
        let f = p.field();
        let d = self.dim();
        let cols: Vec<SparseVec> = (0..d).map(|j| SparseVec::from_dense(&self.basis.column(j))).collect();
        let inside = |v: SparseVec| -> Result<SparseVec> {
            let dense = v.to_dense(p.dim(), f);
            self.coords
                .coords(&dense)
                .map(|c| SparseVec::from_dense(&c))
                .ok_or_else(|| Error::Structural("image leaves the subspace".into()))
        };
        let mut mult = Vec::with_capacity(d * d);
        for a in &cols {
            for b in &cols {
                mult.push(inside(p.mul_sparse(a, b))?);
            }
        }
        let mut comult = Vec::with_capacity(d);
        let mut antipode = Vec::with_capacity(d);
        for a in &cols {
            let delta = p.comult().apply(a);
            let c = self
                .coords
                .coords_tensor(&delta)
                .ok_or_else(|| Error::Structural("coproduct leaves the subspace".into()))?;
            comult.push(SparseVec::from_dense(&c));
            antipode.push(inside(p.antipode().apply(a))?);
        }
        let unit = self
            .coords
            .coords(p.unit())
            .ok_or_else(|| Error::Structural("unit outside the subspace".into()))?;
        let counit = (0..d).map(|j| p.apply_counit(&self.basis.column(j))).collect();
        let yd = match p.yd() {
            None => None,
            Some(yd) => Some(restrict_yd(yd, &self.basis, &self.coords)?),
        };
        Hopf::new(HopfData {
            field: f,
            basis: self.names(),
            mult: LinMap::new(f, d, mult)?,
            unit,
            comult: LinMap::new(f, d * d, comult)?,
            counit,
            antipode: Some(LinMap::new(f, d, antipode)?),
            yd,
        })
    }

    /// Parent names for columns that are parent basis vectors, generic names otherwise.
    pub fn names(&self) -> Vec<String> {
        (0..self.dim())
            .map(|j| {
                let col = SparseVec::from_dense(&self.basis.column(j));
                match col.entries() {
                    [(i, v)] if v.is_one() => self.parent.basis()[*i].clone(),
                    _ => format!("b{j}"),
                }
            })
            .collect()
    }
}

fn restrict_yd(yd: &YdData, basis: &Matrix, coords: &SpanCoords) -> Result<YdData> {
    let f = basis.field();
    let mut degrees = Vec::with_capacity(basis.cols());
    for j in 0..basis.cols() {
        let col = basis.column(j);
        let i = col
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::Structural("zero basis column".into()))?;
        degrees.push(yd.degree(i).clone());
    }
    let mut action = Vec::new();
    for a in yd.generator_actions() {
        let mut m = Matrix::zeros(f, basis.cols(), basis.cols());
        for j in 0..basis.cols() {
            let img = a.apply(&basis.column(j));
            let c = coords
                .coords(&img)
                .ok_or_else(|| Error::Structural("action leaves the subspace".into()))?;
            for (i, x) in c.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        action.push(m);
    }
    YdData::new(yd.group().clone(), degrees, action)
}

/// Split v into its nonzero homogeneous components.
pub(crate) fn homogeneous_components(yd: &YdData, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut seen: Vec<&Vec<u32>> = Vec::new();
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() && !seen.contains(&yd.degree(i)) {
            seen.push(yd.degree(i));
        }
    }
    seen.into_iter()
        .map(|g| {
            v.iter()
                .enumerate()
                .map(|(i, x)| if yd.degree(i) == g { x.clone() } else { x.field().zero() })
                .collect()
        })
        .collect()
}

fn certify(parent: &Hopf, basis: &Matrix, coords: &SpanCoords) -> Certificates {
    let n = parent.dim();
    let f = parent.field();
    let cols: Vec<SparseVec> = (0..basis.cols()).map(|j| SparseVec::from_dense(&basis.column(j))).collect();
    let within = |v: &SparseVec| coords.coords(&v.to_dense(n, f)).is_some();
    let contains_unit = coords.coords(parent.unit()).is_some();
    let mult_closed = cols.iter().all(|a| cols.iter().all(|b| within(&parent.mul_sparse(a, b))));
    let comult_closed = cols
        .iter()
        .all(|a| coords.coords_tensor(&parent.comult().apply(a)).is_some());
    let antipode_stable = cols.iter().all(|a| within(&parent.antipode().apply(a)));
    let yd_stable = match parent.yd() {
        None => true,
        Some(yd) => (0..basis.cols()).all(|j| {
            let col = basis.column(j);
            homogeneous_components(yd, &col)
                .iter()
                .all(|c| coords.coords(c).is_some())
                && yd
                    .generator_actions()
                    .iter()
                    .all(|a| coords.coords(&a.apply(&col)).is_some())
        }),
    };
    Certificates {
        contains_unit,
        mult_closed,
        comult_closed,
        antipode_stable,
        yd_stable,
    }
}

/// Smallest subalgebra containing 1 and the seeds. With a YD context the
/// seeds are first split into homogeneous components and the span is also
/// closed under the group action.
pub fn subalgebra_generate(parent: &Hopf, seeds: &[Vec<Scalar>]) -> Result<SubHopf> {
    let n = parent.dim();
    let f = parent.field();
    for s in seeds {
        if s.len() != n {
            return Err(Error::Dimension(format!("seed of length {} in dimension {n}", s.len())));
        }
    }
    let mut gens: Vec<SparseVec> = Vec::new();
    for s in seeds {
        match parent.yd() {
            Some(yd) => gens.extend(homogeneous_components(yd, s).iter().map(|c| SparseVec::from_dense(c))),
            None => {
                let v = SparseVec::from_dense(s);
                if !v.is_empty() {
                    gens.push(v);
                }
            }
        }
    }
    let actions: Vec<LinMap> = parent
        .yd()
        .map(|yd| yd.generator_actions().iter().map(LinMap::from_matrix).collect())
        .unwrap_or_default();

    let mut reducer = RowReducer::new(f, n, 0);
    let mut basis: Vec<SparseVec> = Vec::new();
    let mut queue = VecDeque::new();
    let mut add = |v: SparseVec, basis: &mut Vec<SparseVec>, queue: &mut VecDeque<usize>| {
        if !v.is_empty() && reducer.push(v.clone()) {
            basis.push(v);
            queue.push_back(basis.len() - 1);
        }
    };
    add(SparseVec::from_dense(parent.unit()), &mut basis, &mut queue);
    for g in &gens {
        add(g.clone(), &mut basis, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        let b = basis[i].clone();
        for g in &gens {
            add(parent.mul_sparse(&b, g), &mut basis, &mut queue);
        }
        for a in &actions {
            add(a.apply(&b), &mut basis, &mut queue);
        }
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|v| v.to_dense(n, f)).collect();
    SubHopf::new(parent, Matrix::from_columns(f, n, &cols)?)
}

pub fn is_grouplike(h: &Hopf, v: &[Scalar]) -> bool {
    if v.len() != h.dim() || !h.apply_counit(v).is_one() {
        return false;
    }
    let sv = SparseVec::from_dense(v);
    let n = h.dim();
    let vv = SparseVec::from_terms(
        sv.iter()
            .flat_map(|(i, x)| sv.iter().map(move |(j, y)| (i * n + j, x * y))),
    );
    h.comult().apply(&sv) == vv
}

/// Basis of {x : Delta x = x (x) g + h (x) x}.
pub fn skew_primitives(hopf: &Hopf, g: &[Scalar], h: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
    for (name, v) in [("g", g), ("h", h)] {
        if !is_grouplike(hopf, v) {
            return Err(Error::NotGroupLike(format!("{name} is not group-like")));
        }
    }
    let n = hopf.dim();
    let f = hopf.field();
    let gs = SparseVec::from_dense(g);
    let hs = SparseVec::from_dense(h);
    let columns = (0..n)
        .map(|k| {
            let mut acc = Accumulator::new();
            acc.add_scaled(hopf.comult().column(k), &f.one());
            for (j, x) in gs.iter() {
                acc.add(k * n + j, &-x);
            }
            for (i, x) in hs.iter() {
                acc.add(i * n + k, &-x);
            }
            acc.finish()
        })
        .collect();
    Ok(LinMap::new(f, n * n, columns)?.kernel())
}

/// Group-like elements found by the search, with a completeness flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLikes {
    pub elements: Vec<Vec<Scalar>>,
    /// Set only when the found elements account for the whole coradical.
    pub complete: bool,
}

/// Dimension of the coradical, as the rank of the trace form of the dual
/// algebra. Only meaningful in characteristic zero.
pub fn coradical_dimension(h: &Hopf) -> Option<usize> {
    if h.field().characteristic() != 0 {
        return None;
    }
    let n = h.dim();
    let f = h.field();
    let delta = h.comult();
    // t_k = trace of left multiplication by e^k in the dual
    let t: Vec<Scalar> = (0..n)
        .map(|k| {
            (0..n).fold(f.zero(), |acc, l| match delta.column(l).get(k * n + l) {
                Some(x) => &acc + x,
                None => acc,
            })
        })
        .collect();
    let mut gram = Matrix::zeros(f, n, n);
    for (k, col) in delta.columns().iter().enumerate() {
        if t[k].is_zero() {
            continue;
        }
        for (ij, x) in col.iter() {
            let (i, j) = (ij / n, ij % n);
            let cur = gram.get(i, j).clone();
            gram.set(i, j, &cur + &(x * &t[k]));
        }
    }
    Some(gram.rank())
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Search for group-likes: basis vectors and hints (normalized by the
/// counit), then normalized vectors spanning one-dimensional joint
/// eigenspaces of the operators (id (x) f)Delta for characters f.
pub fn grouplike_candidates(h: &Hopf, hints: &[Vec<Scalar>]) -> GroupLikes {
    let n = h.dim();
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    let consider = |v: &[Scalar], found: &mut Vec<Vec<Scalar>>| {
        if v.len() != n {
            return;
        }
        let e = h.apply_counit(v);
        let Ok(inv) = e.inv() else {
            return;
        };
        let w: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
        if !found.contains(&w) && is_grouplike(h, &w) {
            found.push(w);
        }
    };
    consider(h.unit(), &mut found);
    for i in 0..n {
        consider(&h.basis_vector(i), &mut found);
    }
    for v in hints {
        consider(v, &mut found);
    }
    let target = coradical_dimension(h);
    if target != Some(found.len()) && !h.is_braided() {
        for v in joint_eigenvectors(h) {
            consider(&v, &mut found);
        }
    }
    GroupLikes {
        complete: target == Some(found.len()),
        elements: found,
    }
}

/// Algebra maps H -> k among the counit and the coordinate functionals.
fn basis_characters(h: &Hopf) -> Vec<Vec<Scalar>> {
    let n = h.dim();
    let f = h.field();
    let mut chars = vec![h.counit().to_vec()];
    for i in 0..n {
        let ei: Vec<Scalar> = (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect();
        if chars.contains(&ei) {
            continue;
        }
        let unit_ok = h.unit()[i].is_one();
        let mult_ok = unit_ok
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    let lhs = h.mult().get(i, a * n + b);
                    let rhs = if a == i && b == i { f.one() } else { f.zero() };
                    lhs == rhs
                })
            });
        if mult_ok {
            chars.push(ei);
        }
    }
    chars
}

fn joint_eigenvectors(h: &Hopf) -> Vec<Vec<Scalar>> {
    let n = h.dim();
    let f = h.field();
    let mut eigenvalues: Vec<Scalar> = Vec::new();
    for d in divisors(n) {
        if let Ok(w) = f.root_of_unity(d as u64) {
            for k in 0..d {
                let x = w.pow(k as u64);
                if !eigenvalues.contains(&x) {
                    eigenvalues.push(x);
                }
            }
        }
    }
    let mut spaces: Vec<Matrix> = vec![Matrix::identity(f, n)];
    for chi in basis_characters(h) {
        // R(x) = (id (x) chi) Delta x
        let cols = (0..n)
            .map(|k| {
                SparseVec::from_terms(
                    h.comult()
                        .column(k)
                        .iter()
                        .filter(|(ij, _)| !chi[ij % n].is_zero())
                        .map(|(ij, x)| (ij / n, x * &chi[ij % n])),
                )
            })
            .collect();
        let r = LinMap::new(f, n, cols).expect("square").to_matrix();
        let mut next = Vec::new();
        for space in &spaces {
            let image = r.matmul(space).expect("shapes");
            for lambda in &eigenvalues {
                let shifted = image.sub(&space.scale(lambda)).expect("shapes");
                let kernel = shifted.kernel();
                if kernel.is_empty() {
                    continue;
                }
                let y = Matrix::from_columns(f, space.cols(), &kernel).expect("shapes");
                next.push(space.matmul(&y).expect("shapes"));
            }
        }
        spaces = next;
    }
    spaces
        .into_iter()
        .filter(|s| s.cols() == 1)
        .map(|s| s.column(0))
        .collect()
}
