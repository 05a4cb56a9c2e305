//! Yetter-Drinfeld modules over the group algebra of a finite abelian group.
//!
//! Objects carry a homogeneous basis (coaction v -> deg(v) (x) v) and a
//! commuting family of generator action matrices. The braiding is
//! C(v (x) w) = (deg(v) . w) (x) v.

use std::fmt;

use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::linalg::{eval_chain, LinMap, Matrix, SparseVec};
use crate::scalars::{Field, Scalar};

/// Product of cyclic groups Z_{n_1} x ... x Z_{n_r}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
}

/// Group element as an exponent tuple.
pub type GroupElem = Vec<u32>;

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<FiniteAbelianGroup> {
        if factors.contains(&0) {
            return Err(Error::InvalidDatum("cyclic factor orders must be positive".into()));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup { factors: vec![n] }
    }

    pub fn trivial() -> FiniteAbelianGroup {
        FiniteAbelianGroup { factors: vec![] }
    }

    /// Parse "Z6", "Z2xZ3", "Z2 x Z2" or "1" (trivial).
    pub fn parse(text: &str) -> Result<FiniteAbelianGroup> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "1" || t.is_empty() {
            return Ok(FiniteAbelianGroup::trivial());
        }
        let mut factors = Vec::new();
        for part in t.split(['x', '*']) {
            let n = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .and_then(|s| s.parse::<u32>().ok())
                .ok_or_else(|| Error::Parse(format!("bad cyclic factor {part:?} in {text:?}")))?;
            factors.push(n);
        }
        FiniteAbelianGroup::new(factors)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &n| num_integer::lcm(acc, n as u64))
    }

    pub fn identity(&self) -> GroupElem {
        vec![0; self.factors.len()]
    }

    pub fn generator(&self, i: usize) -> GroupElem {
        let mut g = self.identity();
        g[i] = 1 % self.factors[i];
        g
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.factors.len() && g.iter().zip(&self.factors).all(|(a, n)| a < n)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> GroupElem {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    pub fn pow(&self, a: &[u32], k: u64) -> GroupElem {
        a.iter()
            .zip(&self.factors)
            .map(|(x, n)| ((*x as u64 * k) % *n as u64) as u32)
            .collect()
    }

    pub fn inv(&self, a: &[u32]) -> GroupElem {
        a.iter().zip(&self.factors).map(|(x, n)| (n - x) % n).collect()
    }

    pub fn element_order(&self, a: &[u32]) -> u64 {
        a.iter().zip(&self.factors).fold(1u64, |acc, (x, n)| {
            let n = *n as u64;
            num_integer::lcm(acc, n / num_integer::gcd(*x as u64, n))
        })
    }

    /// Elements in lexicographic order of exponent tuples.
    pub fn elements(&self) -> Vec<GroupElem> {
        (0..self.order()).map(|k| self.element_at(k)).collect()
    }

    pub fn element_at(&self, mut k: usize) -> GroupElem {
        let mut g = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let n = self.factors[i] as usize;
            g[i] = (k % n) as u32;
            k /= n;
        }
        g
    }

    pub fn index_of(&self, g: &[u32]) -> usize {
        g.iter()
            .zip(&self.factors)
            .fold(0, |acc, (x, n)| acc * *n as usize + *x as usize)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Character of a finite abelian group: generator i maps to zeta_{n_i}^{c_i}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    exponents: Vec<u32>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, exponents: Vec<u32>) -> Result<Character> {
        if exponents.len() != group.rank() {
            return Err(Error::InvalidDatum(format!(
                "character needs {} exponents, got {}",
                group.rank(),
                exponents.len()
            )));
        }
        let exponents = exponents
            .iter()
            .zip(group.factors())
            .map(|(c, n)| c % n)
            .collect();
        Ok(Character { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// chi(g) as a power of the group's exponent-order root omega.
    pub fn value_exponent(&self, group: &FiniteAbelianGroup, g: &[u32]) -> u64 {
        let e = group.exponent();
        self.exponents
            .iter()
            .zip(g)
            .zip(group.factors())
            .map(|((c, a), n)| (*c as u64 * *a as u64 % e) * (e / *n as u64) % e)
            .sum::<u64>()
            % e
    }
}

/// Powers of a fixed primitive e-th root of unity omega, e = exponent of the group.
#[derive(Debug, Clone)]
pub struct RootTable {
    order: u64,
    powers: Vec<Scalar>,
}

impl RootTable {
    pub fn new(field: Field, order: u64) -> Result<RootTable> {
        let omega = field.root_of_unity(order)?;
        let mut powers = Vec::with_capacity(order as usize);
        let mut acc = field.one();
        for _ in 0..order {
            powers.push(acc.clone());
            acc = &acc * &omega;
        }
        Ok(RootTable { order, powers })
    }

    pub fn power(&self, k: u64) -> &Scalar {
        &self.powers[(k % self.order) as usize]
    }

    pub fn order(&self) -> u64 {
        self.order
    }
}

/// Yetter-Drinfeld structure on a space with a homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YdData {
    group: FiniteAbelianGroup,
    degrees: Vec<GroupElem>,
    /// One matrix per group generator, acting on the basis.
    action: Vec<Matrix>,
}

impl YdData {
    pub fn new(group: FiniteAbelianGroup, degrees: Vec<GroupElem>, action: Vec<Matrix>) -> Result<YdData> {
        let n = degrees.len();
        if action.len() != group.rank() {
            return Err(Error::YetterDrinfeld(format!(
                "{} action matrices for a group of rank {}",
                action.len(),
                group.rank()
            )));
        }
        for (i, d) in degrees.iter().enumerate() {
            if !group.contains(d) {
                return Err(Error::YetterDrinfeld(format!("degree of basis {i} is not in {group}")));
            }
        }
        for (i, a) in action.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(Error::YetterDrinfeld(format!(
                    "action matrix {i} is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(YdData {
            group,
            degrees,
            action,
        })
    }

    /// Trivial grading and trivial action.
    pub fn trivial(group: FiniteAbelianGroup, field: Field, dim: usize) -> YdData {
        let degrees = vec![group.identity(); dim];
        let action = (0..group.rank()).map(|_| Matrix::identity(field, dim)).collect();
        YdData {
            group,
            degrees,
            action,
        }
    }

    /// Diagonal action: basis vector i is acted on by the character chars[i].
    pub fn diagonal(
        group: FiniteAbelianGroup,
        roots: &RootTable,
        degrees: Vec<GroupElem>,
        chars: &[Character],
    ) -> Result<YdData> {
        let n = degrees.len();
        let field = roots.power(0).field();
        let mut action = Vec::with_capacity(group.rank());
        for gi in 0..group.rank() {
            let gen = group.generator(gi);
            let mut m = Matrix::zeros(field, n, n);
            for (i, chi) in chars.iter().enumerate() {
                m.set(i, i, roots.power(chi.value_exponent(&group, &gen)).clone());
            }
            action.push(m);
        }
        YdData::new(group, degrees, action)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn degrees(&self) -> &[GroupElem] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElem {
        &self.degrees[i]
    }

    pub fn generator_actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn field(&self) -> Option<Field> {
        self.action.first().map(Matrix::field)
    }

    /// Matrix of the action of an arbitrary group element.
    pub fn action_of(&self, g: &[u32], field: Field) -> Matrix {
        let mut m = Matrix::identity(field, self.dim());
        for (i, &k) in g.iter().enumerate() {
            for _ in 0..k {
                m = self.action[i].matmul(&m).expect("square action matrices");
            }
        }
        m
    }

    /// Is every degree trivial and every action the identity?
    pub fn is_trivial(&self) -> bool {
        self.degrees.iter().all(|d| d.iter().all(|&x| x == 0))
            && self.action.iter().all(Matrix::is_identity)
    }

    /// YD structure of V (x) W: degrees multiply, the group acts diagonally.
    pub fn tensor(&self, other: &YdData) -> Result<YdData> {
        if self.group != other.group {
            return Err(Error::YetterDrinfeld(format!(
                "groups differ: {} vs {}",
                self.group, other.group
            )));
        }
        let mut degrees = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.degrees {
            for b in &other.degrees {
                degrees.push(self.group.mul(a, b));
            }
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.kron(b))
            .collect();
        Ok(YdData {
            group: self.group.clone(),
            degrees,
            action,
        })
    }
}

/// C_{V,W}: V (x) W -> W (x) V, C(v_i (x) w_j) = (deg(v_i) . w_j) (x) v_i.
pub fn braiding(v: &YdData, w: &YdData, field: Field) -> Result<LinMap> {
    if v.group != w.group {
        return Err(Error::YetterDrinfeld(format!(
            "cannot braid objects over {} and {}",
            v.group, w.group
        )));
    }
    let (dv, dw) = (v.dim(), w.dim());
    let mut cache: Vec<(GroupElem, Matrix)> = Vec::new();
    let mut columns = Vec::with_capacity(dv * dw);
    for i in 0..dv {
        let deg = &v.degrees[i];
        let act = match cache.iter().find(|(g, _)| g == deg) {
            Some((_, m)) => m.clone(),
            None => {
                let m = w.action_of(deg, field);
                cache.push((deg.clone(), m.clone()));
                m
            }
        };
        for j in 0..dw {
            let terms = (0..dw).map(|k| (k * dv + i, act.get(k, j).clone()));
            columns.push(SparseVec::from_terms(terms));
        }
    }
    LinMap::new(field, dw * dv, columns)
}

/// C_{V,W}^{-1}: W (x) V -> V (x) W, w (x) v -> v (x) (deg(v)^{-1} . w).
pub fn inverse_braiding(v: &YdData, w: &YdData, field: Field) -> Result<LinMap> {
    if v.group != w.group {
        return Err(Error::YetterDrinfeld("group mismatch".into()));
    }
    let (dv, dw) = (v.dim(), w.dim());
    let mut columns = vec![SparseVec::new(); dw * dv];
    for i in 0..dv {
        let act = w.action_of(&v.group.inv(&v.degrees[i]), field);
        for k in 0..dw {
            let terms = (0..dw).map(|j| (i * dw + j, act.get(j, k).clone()));
            columns[k * dv + i] = SparseVec::from_terms(terms);
        }
    }
    LinMap::new(field, dv * dw, columns)
}

/// Outcome of [`check_yd`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YdVerdict {
    pub failures: Vec<String>,
}

impl YdVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify the module relations, the YD condition and the braid relation on V (x) V (x) V.
pub fn check_yd(data: &YdData, field: Field) -> YdVerdict {
    let mut failures = Vec::new();
    let n = data.dim();
    let id = Matrix::identity(field, n);
    for (i, a) in data.action.iter().enumerate() {
        let order = data.group.factors[i] as u64;
        let mut p = id.clone();
        for _ in 0..order {
            p = a.matmul(&p).expect("square");
        }
        if p != id {
            failures.push(format!("generator {i}: action does not have order dividing {order}"));
        }
        for (j, b) in data.action.iter().enumerate().skip(i + 1) {
            if a.matmul(b).unwrap() != b.matmul(a).unwrap() {
                failures.push(format!("generators {i} and {j}: actions do not commute"));
            }
        }
        // action preserves every homogeneous component
        for r in 0..n {
            for c in 0..n {
                if !a.get(r, c).is_zero() && data.degrees[r] != data.degrees[c] {
                    failures.push(format!(
                        "generator {i}: action maps basis {c} into a different degree (basis {r})"
                    ));
                }
            }
        }
    }
    if failures.is_empty() {
        if let Err(msg) = braid_relation(data, field) {
            failures.push(msg);
        }
    }
    YdVerdict { failures }
}

fn braid_relation(data: &YdData, field: Field) -> std::result::Result<(), String> {
    let n = data.dim();
    let c = braiding(data, data, field).map_err(|e| e.to_string())?;
    let id = LinMap::identity(field, n);
    let lhs = eval_chain(&[vec![&c, &id], vec![&id, &c], vec![&c, &id]]).map_err(|e| e.to_string())?;
    let rhs = eval_chain(&[vec![&id, &c], vec![&c, &id], vec![&id, &c]]).map_err(|e| e.to_string())?;
    match lhs.first_difference(&rhs) {
        None => Ok(()),
        Some((col, row, a, b)) => Err(format!(
            "braid relation fails at column {col}, row {row}: {a} vs {b}"
        )),
    }
}

/// Braided commutativity m . C_{H,H} = m.
pub fn is_braided_commutative(h: &Hopf) -> bool {
    let c = h.self_braiding();
    h.mult().compose(c).expect("square braiding") == *h.mult()
}
