//! Finite-dimensional (braided) Hopf algebras given by structure constants.
//!
//! Structure maps are stored as sparse linear maps: `mult` is n x n^2,
//! `comult` is n^2 x n, and tensor indices are flattened row-major.

mod sub;

use std::sync::Arc;

pub use sub::{
    coradical_dimension, grouplike_candidates, is_grouplike, skew_primitives, subalgebra_generate,
    Certificates, GroupLikes, SubHopf,
};

use crate::error::{Error, Result};
use crate::linalg::{eval_chain, unflatten, Accumulator, LinMap, Matrix, RowReducer, SparseTensor, SparseVec, Tensor3};
use crate::scalars::{Field, Scalar};
use crate::yd::{braiding, check_yd, FiniteAbelianGroup, YdData};

/// Candidate structure, not yet verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfData {
    pub field: Field,
    pub basis: Vec<String>,
    pub mult: LinMap,
    pub unit: Vec<Scalar>,
    pub comult: LinMap,
    pub counit: Vec<Scalar>,
    pub antipode: Option<LinMap>,
    pub yd: Option<YdData>,
}

impl HopfData {
    /// Build from structure constant tensors mu[i,j,k] and delta[k,i,j].
    #[allow(clippy::too_many_arguments)]
    pub fn from_tensors(
        field: Field,
        basis: Vec<String>,
        mult: &Tensor3,
        unit: Vec<Scalar>,
        comult: &Tensor3,
        counit: Vec<Scalar>,
        antipode: Option<&Matrix>,
        yd: Option<YdData>,
    ) -> Result<HopfData> {
        let n = basis.len();
        for (name, t) in [("multiplication", mult), ("comultiplication", comult)] {
            if t.dims() != [n, n, n] {
                return Err(Error::Dimension(format!(
                    "{name} tensor has dims {:?}, expected [{n}, {n}, {n}]",
                    t.dims()
                )));
            }
            if t.field() != field {
                return Err(Error::FieldMismatch(field, t.field()));
            }
        }
        let mut mcols = vec![Accumulator::new(); n * n];
        for (idx, v) in mult.entries() {
            mcols[idx[0] * n + idx[1]].add(idx[2], v);
        }
        let mut dcols = vec![Accumulator::new(); n];
        for (idx, v) in comult.entries() {
            dcols[idx[0]].add(idx[1] * n + idx[2], v);
        }
        let data = HopfData {
            field,
            basis,
            mult: LinMap::new(field, n, mcols.into_iter().map(Accumulator::finish).collect())?,
            unit,
            comult: LinMap::new(field, n * n, dcols.into_iter().map(Accumulator::finish).collect())?,
            counit,
            antipode: antipode.map(LinMap::from_matrix),
            yd,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Structural (pre-axiom) consistency of shapes and fields.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let shape = |name: &str, m: &LinMap, r: usize, c: usize| -> Result<()> {
            if m.rows() != r || m.cols() != c {
                return Err(Error::Dimension(format!(
                    "{name} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != self.field {
                return Err(Error::FieldMismatch(self.field, m.field()));
            }
            Ok(())
        };
        if n == 0 {
            return Err(Error::Dimension("dimension must be positive".into()));
        }
        shape("multiplication", &self.mult, n, n * n)?;
        shape("comultiplication", &self.comult, n * n, n)?;
        if let Some(s) = &self.antipode {
            shape("antipode", s, n, n)?;
        }
        for (name, v) in [("unit", &self.unit), ("counit", &self.counit)] {
            if v.len() != n {
                return Err(Error::Dimension(format!("{name} has length {}, expected {n}", v.len())));
            }
            if let Some(x) = v.iter().find(|x| x.field() != self.field) {
                return Err(Error::FieldMismatch(self.field, x.field()));
            }
        }
        if let Some(yd) = &self.yd {
            if yd.dim() != n {
                return Err(Error::Dimension(format!(
                    "Yetter-Drinfeld data has {} degrees, expected {n}",
                    yd.dim()
                )));
            }
            if let Some(f) = yd.field() {
                if f != self.field {
                    return Err(Error::FieldMismatch(self.field, f));
                }
            }
        }
        Ok(())
    }

    /// C_{H,H}: the module braiding, or the flip when there is no YD context.
    pub fn braiding(&self) -> Result<LinMap> {
        match &self.yd {
            None => Ok(LinMap::twist(self.field, self.dim(), self.dim())),
            Some(yd) => braiding(yd, yd, self.field),
        }
    }
}

/// One axiom of [`check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Description of the first failing entry.
    pub detail: Option<String>,
    /// Flattened input indices on which the two sides differ.
    pub failing_inputs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn compare(name: &'static str, lhs: &LinMap, rhs: &LinMap, input_dims: &[usize]) -> AxiomCheck {
    let failing_inputs: Vec<usize> = (0..lhs.cols())
        .filter(|&j| lhs.column(j) != rhs.column(j))
        .collect();
    let detail = lhs.first_difference(rhs).map(|(col, row, a, b)| {
        let mut digits = vec![0; input_dims.len()];
        unflatten(col, input_dims, &mut digits);
        format!("input {digits:?} (flat {col}), output component {row}: {a} vs {b}")
    });
    AxiomCheck {
        name,
        passed: detail.is_none(),
        detail,
        failing_inputs,
    }
}

/// Verify every Hopf algebra axiom as an exact identity of linear maps.
pub fn check_axioms(data: &HopfData) -> Result<AxiomReport> {
    data.validate()?;
    let n = data.dim();
    let f = data.field;
    let id = LinMap::identity(f, n);
    let id1 = LinMap::identity(f, 1);
    let m = &data.mult;
    let d = &data.comult;
    let u = LinMap::vector(&data.unit, f);
    let e = LinMap::covector(&data.counit, f);
    let c = data.braiding()?;
    let mut checks = Vec::new();

    checks.push(compare(
        "associativity",
        &eval_chain(&[vec![m, &id], vec![m]])?,
        &eval_chain(&[vec![&id, m], vec![m]])?,
        &[n, n, n],
    ));
    checks.push(compare("left unit", &eval_chain(&[vec![&u, &id], vec![m]])?, &id, &[n]));
    checks.push(compare("right unit", &eval_chain(&[vec![&id, &u], vec![m]])?, &id, &[n]));
    checks.push(compare(
        "coassociativity",
        &eval_chain(&[vec![d], vec![d, &id]])?,
        &eval_chain(&[vec![d], vec![&id, d]])?,
        &[n],
    ));
    checks.push(compare("left counit", &eval_chain(&[vec![d], vec![&e, &id]])?, &id, &[n]));
    checks.push(compare("right counit", &eval_chain(&[vec![d], vec![&id, &e]])?, &id, &[n]));
    checks.push(compare(
        "bialgebra compatibility",
        &d.compose(m)?,
        &eval_chain(&[vec![d, d], vec![&id, &c, &id], vec![m, m]])?,
        &[n, n],
    ));
    checks.push(compare("counit multiplicative", &e.compose(m)?, &LinMap::kron(&[&e, &e]), &[n, n]));
    checks.push(compare("unit comultiplicative", &d.compose(&u)?, &LinMap::kron(&[&u, &u]), &[1]));
    checks.push(compare("counit of unit", &e.compose(&u)?, &id1, &[1]));

    if let Some(s) = &data.antipode {
        let eta_eps = u.compose(&e)?;
        checks.push(compare(
            "left antipode",
            &eval_chain(&[vec![d], vec![s, &id], vec![m]])?,
            &eta_eps,
            &[n],
        ));
        checks.push(compare(
            "right antipode",
            &eval_chain(&[vec![d], vec![&id, s], vec![m]])?,
            &eta_eps,
            &[n],
        ));
    }

    if let Some(yd) = &data.yd {
        let mut failures = check_yd(yd, f).failures;
        failures.extend(yd_morphism_failures(data, yd));
        checks.push(AxiomCheck {
            name: "yetter-drinfeld structure",
            passed: failures.is_empty(),
            detail: failures.first().cloned(),
            failing_inputs: Vec::new(),
        });
    }
    Ok(AxiomReport { checks })
}

/// Structure maps must be graded and equivariant.
fn yd_morphism_failures(data: &HopfData, yd: &YdData) -> Vec<String> {
    let n = data.dim();
    let f = data.field;
    let group = yd.group();
    let mut out = Vec::new();
    let deg = |i: usize| yd.degree(i);
    for i in 0..n {
        for j in 0..n {
            let want = group.mul(deg(i), deg(j));
            for (k, _) in data.mult.column(i * n + j).iter() {
                if *deg(*k) != want {
                    out.push(format!("multiplication of basis {i} and {j} is not homogeneous"));
                }
            }
        }
    }
    for k in 0..n {
        for (ij, _) in data.comult.column(k).iter() {
            if group.mul(deg(ij / n), deg(ij % n)) != *deg(k) {
                out.push(format!("comultiplication of basis {k} is not homogeneous"));
            }
        }
        if !data.unit[k].is_zero() && deg(k).iter().any(|&x| x != 0) {
            out.push(format!("unit has a component of nontrivial degree at basis {k}"));
        }
        if !data.counit[k].is_zero() && deg(k).iter().any(|&x| x != 0) {
            out.push(format!("counit is nonzero on basis {k} of nontrivial degree"));
        }
        if let Some(s) = &data.antipode {
            for (r, _) in s.column(k).iter() {
                if deg(*r) != deg(k) {
                    out.push(format!("antipode does not preserve the degree of basis {k}"));
                }
            }
        }
    }
    for (gi, a) in yd.generator_actions().iter().enumerate() {
        let a = LinMap::from_matrix(a);
        let aa = LinMap::kron(&[&a, &a]);
        let e = LinMap::covector(&data.counit, f);
        let eq = |x: Result<LinMap>, y: Result<LinMap>| match (x, y) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        };
        if !eq(a.compose(&data.mult), data.mult.compose(&aa)) {
            out.push(format!("multiplication is not equivariant for generator {gi}"));
        }
        if !eq(aa.compose(&data.comult), data.comult.compose(&a)) {
            out.push(format!("comultiplication is not equivariant for generator {gi}"));
        }
        if a.apply_dense(&data.unit) != data.unit {
            out.push(format!("unit is not invariant under generator {gi}"));
        }
        if !eq(e.compose(&a), Ok(e.clone())) {
            out.push(format!("counit is not invariant under generator {gi}"));
        }
        if let Some(s) = &data.antipode {
            if !eq(a.compose(s), s.compose(&a)) {
                out.push(format!("antipode is not equivariant for generator {gi}"));
            }
        }
    }
    out.dedup();
    out
}

/// Solve m(S (x) id)Delta = eta epsilon for S. The solution must be unique.
pub fn solve_antipode(data: &HopfData) -> Result<LinMap> {
    data.validate()?;
    let n = data.dim();
    let f = data.field;
    // unknown S[a,i] (row a, column i) has index i*n + a
    let mut reducer = RowReducer::new(f, n * n, 1);
    for k in 0..n {
        let mut rows: Vec<Accumulator> = (0..n).map(|_| Accumulator::new()).collect();
        for (ij, dv) in data.comult.column(k).iter() {
            let (i, j) = (ij / n, ij % n);
            for a in 0..n {
                for (c, mv) in data.mult.column(a * n + j).iter() {
                    rows[*c].add(i * n + a, &(dv * mv));
                }
            }
        }
        for (c, acc) in rows.into_iter().enumerate() {
            let rhs = &data.counit[k] * &data.unit[c];
            let mut row = acc.finish();
            if !rhs.is_zero() {
                row = row.add(&SparseVec::from_terms([(n * n, rhs)]));
            }
            reducer.push(row);
        }
    }
    let reduced = reducer.reduce();
    if reduced.is_inconsistent() {
        return Err(Error::NoAntipode(
            "the identity has no convolution inverse".into(),
        ));
    }
    if !reduced.free_columns().is_empty() {
        return Err(Error::NoAntipode(format!(
            "convolution equation has a {}-dimensional solution space",
            reduced.free_columns().len()
        )));
    }
    let sol = reduced.particular(0).expect("consistent");
    let columns = (0..n)
        .map(|i| SparseVec::from_dense(&sol[i * n..(i + 1) * n]))
        .collect();
    LinMap::new(f, n, columns)
}

/// A verified Hopf algebra (possibly braided). Cheap to clone.
#[derive(Debug, Clone)]
pub struct Hopf {
    data: Arc<HopfData>,
    braiding: Arc<LinMap>,
}

impl PartialEq for Hopf {
    fn eq(&self, other: &Hopf) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Hopf {
    /// Verify a candidate, solving for the antipode when none is given.
    pub fn new(mut data: HopfData) -> Result<Hopf> {
        data.validate()?;
        if data.antipode.is_none() {
            data.antipode = Some(solve_antipode(&data)?);
        }
        let report = check_axioms(&data)?;
        if let Some(fail) = report.first_failure() {
            return Err(Error::Axiom(format!(
                "{}: {}",
                fail.name,
                fail.detail.clone().unwrap_or_default()
            )));
        }
        let braiding = data.braiding()?;
        Ok(Hopf {
            data: Arc::new(data),
            braiding: Arc::new(braiding),
        })
    }

    pub fn data(&self) -> &HopfData {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn field(&self) -> Field {
        self.data.field
    }

    pub fn basis(&self) -> &[String] {
        &self.data.basis
    }

    pub fn mult(&self) -> &LinMap {
        &self.data.mult
    }

    pub fn comult(&self) -> &LinMap {
        &self.data.comult
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.data.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.data.counit
    }

    pub fn antipode(&self) -> &LinMap {
        self.data.antipode.as_ref().expect("verified Hopf algebras carry an antipode")
    }

    pub fn yd(&self) -> Option<&YdData> {
        self.data.yd.as_ref()
    }

    pub fn self_braiding(&self) -> &LinMap {
        &self.braiding
    }

    /// Is the braiding anything other than the flip?
    pub fn is_braided(&self) -> bool {
        *self.braiding != LinMap::twist(self.field(), self.dim(), self.dim())
    }

    /// YD structure, trivial over the trivial group when absent.
    pub fn yd_or_trivial(&self, group: &FiniteAbelianGroup) -> YdData {
        match self.yd() {
            Some(y) => y.clone(),
            None => YdData::trivial(group.clone(), self.field(), self.dim()),
        }
    }

    pub fn mult_tensor(&self) -> Tensor3 {
        let n = self.dim();
        let mut t = SparseTensor::new(self.field(), vec![n, n, n]);
        for (ij, col) in self.mult().columns().iter().enumerate() {
            for (k, v) in col.iter() {
                t.add(vec![ij / n, ij % n, *k], v);
            }
        }
        t
    }

    pub fn comult_tensor(&self) -> Tensor3 {
        let n = self.dim();
        let mut t = SparseTensor::new(self.field(), vec![n, n, n]);
        for (k, col) in self.comult().columns().iter().enumerate() {
            for (ij, v) in col.iter() {
                t.add(vec![k, ij / n, ij % n], v);
            }
        }
        t
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim()];
        v[i] = self.field().one();
        v
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis().iter().position(|b| b == name)
    }

    pub fn mul_sparse(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let n = self.dim();
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc.add_scaled(self.mult().column(i * n + j), &(x * y));
            }
        }
        acc.finish()
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.mul_sparse(&SparseVec::from_dense(a), &SparseVec::from_dense(b))
            .to_dense(self.dim(), self.field())
    }

    /// Delta(v) as a flattened vector of length n^2.
    pub fn coproduct(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.comult().apply_dense(v)
    }

    pub fn apply_counit(&self, v: &[Scalar]) -> Scalar {
        v.iter()
            .zip(self.counit())
            .fold(self.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn apply_antipode(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.antipode().apply_dense(v)
    }

    pub fn antipode_matrix(&self) -> Matrix {
        self.antipode().to_matrix()
    }
}

/// C_{A,B}. Objects without a YD context braid by the flip.
pub fn braiding_between(a: &Hopf, b: &Hopf) -> Result<LinMap> {
    match (a.yd(), b.yd()) {
        (Some(x), Some(y)) => braiding(x, y, a.field()),
        _ => Ok(LinMap::twist(a.field(), a.dim(), b.dim())),
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix("^*") {
        Some(base) => base.to_string(),
        None => format!("{name}^*"),
    }
}

/// Linear dual with transposed structure constants.
pub fn dual(h: &Hopf) -> Result<Hopf> {
    if h.is_braided() {
        return Err(Error::BraidedUnsupported);
    }
    Hopf::new(HopfData {
        field: h.field(),
        basis: h.basis().iter().map(|b| dual_name(b)).collect(),
        mult: h.comult().transpose(),
        unit: h.counit().to_vec(),
        comult: h.mult().transpose(),
        counit: h.unit().to_vec(),
        antipode: Some(h.antipode().transpose()),
        yd: None,
    })
}

/// A (x) B with the braided tensor product structure.
pub fn tensor_hopf(a: &Hopf, b: &Hopf) -> Result<Hopf> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let f = a.field();
    let yd = match (a.yd(), b.yd()) {
        (None, None) => None,
        (Some(x), None) => Some(x.tensor(&b.yd_or_trivial(x.group()))?),
        (None, Some(y)) => Some(a.yd_or_trivial(y.group()).tensor(y)?),
        (Some(x), Some(y)) => Some(x.tensor(y)?),
    };
    let ia = LinMap::identity(f, a.dim());
    let ib = LinMap::identity(f, b.dim());
    let cba = braiding_between(b, a)?;
    let cab = braiding_between(a, b)?;
    let mult = eval_chain(&[vec![&ia, &cba, &ib], vec![a.mult(), b.mult()]])?;
    let comult = eval_chain(&[vec![a.comult(), b.comult()], vec![&ia, &cab, &ib]])?;
    let flat = cab == LinMap::twist(f, a.dim(), b.dim()) && cba == LinMap::twist(f, b.dim(), a.dim());
    let antipode = flat.then(|| LinMap::kron(&[a.antipode(), b.antipode()]));
    let mut basis = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis() {
        for y in b.basis() {
            basis.push(format!("{x}⊗{y}"));
        }
    }
    let kron_vec = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        x.iter().flat_map(|p| y.iter().map(move |q| p * q)).collect()
    };
    Hopf::new(HopfData {
        field: f,
        basis,
        mult,
        unit: kron_vec(a.unit(), b.unit()),
        comult,
        counit: kron_vec(a.counit(), b.counit()),
        antipode,
        yd,
    })
}

/// Which structure maps a linear map respects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismReport {
    pub algebra: bool,
    pub coalgebra: bool,
    pub antipode: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismVerdict {
    HopfMap,
    AlgebraMap,
    CoalgebraMap,
    None,
}

impl MorphismReport {
    pub fn verdict(&self) -> MorphismVerdict {
        match (self.algebra, self.coalgebra) {
            (true, true) if self.antipode => MorphismVerdict::HopfMap,
            (true, _) => MorphismVerdict::AlgebraMap,
            (false, true) => MorphismVerdict::CoalgebraMap,
            (false, false) => MorphismVerdict::None,
        }
    }
}

/// Test f : A -> B (a dim B x dim A matrix) against each structure map.
pub fn morphism_check(f: &Matrix, a: &Hopf, b: &Hopf) -> Result<MorphismReport> {
    if f.rows() != b.dim() || f.cols() != a.dim() {
        return Err(Error::Dimension(format!(
            "morphism matrix is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            b.dim(),
            a.dim()
        )));
    }
    if f.field() != a.field() || a.field() != b.field() {
        return Err(Error::FieldMismatch(f.field(), b.field()));
    }
    let fm = LinMap::from_matrix(f);
    let ff = LinMap::kron(&[&fm, &fm]);
    let algebra = fm.compose(a.mult())? == b.mult().compose(&ff)?
        && fm.apply_dense(a.unit()) == b.unit();
    let eb = LinMap::covector(b.counit(), b.field());
    let ea = LinMap::covector(a.counit(), a.field());
    let coalgebra = ff.compose(a.comult())? == b.comult().compose(&fm)? && eb.compose(&fm)? == ea;
    let antipode = fm.compose(a.antipode())? == b.antipode().compose(&fm)?;
    Ok(MorphismReport {
        algebra,
        coalgebra,
        antipode,
    })
}
