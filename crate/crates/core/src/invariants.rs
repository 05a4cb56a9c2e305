//! Integrals, semisimplicity tests and the classification report built on
//! them.

use std::fmt;

use crate::factorization::{reconstruct, BracketTree};
use crate::hopf::{dual, Hopf, SubHopf};
use crate::linalg::{solve_linear, Accumulator, LinMap, Matrix, Solution};
use crate::{Error, Field, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralResult {
    pub side: Side,
    pub basis: Vec<Vec<Scalar>>,
    pub dim: usize,
}

impl IntegralResult {
    /// The generator, when the space is one-dimensional.
    pub fn integral(&self) -> Option<&[Scalar]> {
        (self.dim == 1).then(|| self.basis[0].as_slice())
    }
}

/// Kernel of the stacked system a Λ = ε(a) Λ (or Λ a = ε(a) Λ) over the
/// basis elements a.
pub fn integrals(h: &Hopf, side: Side) -> IntegralResult {
    let n = h.dim();
    let mult = h.mult();
    let eps = h.counit();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = Accumulator::new();
        for a in 0..n {
            let col = match side {
                Side::Left => mult.column(a * n + j),
                Side::Right => mult.column(j * n + a),
            };
            for (k, x) in col.iter() {
                acc.add(a * n + k, x);
            }
            acc.add(a * n + j, &-&eps[a]);
        }
        columns.push(acc.finish());
    }
    let system = LinMap::new(h.field(), n * n, columns).expect("integral system has consistent shape");
    let basis = system.kernel();
    IntegralResult {
        side,
        dim: basis.len(),
        basis,
    }
}

fn one_integral(h: &Hopf, side: Side) -> Result<Vec<Scalar>> {
    let r = integrals(h, side);
    match r.integral() {
        Some(v) => Ok(v.to_vec()),
        None => Err(Error::Structural(format!(
            "{side} integral space of a {}-dimensional Hopf algebra has dimension {}",
            h.dim(),
            r.dim
        ))),
    }
}

fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    let pivot = match a.iter().position(|x| !x.is_zero()) {
        Some(p) => p,
        None => return b.iter().all(|x| x.is_zero()),
    };
    let ratio = &b[pivot] * &a[pivot].inv().expect("nonzero pivot");
    a.iter().zip(b).all(|(x, y)| &(x * &ratio) == y)
}

/// Left and right integrals span the same line.
pub fn unimodular(h: &Hopf) -> Result<bool> {
    let l = one_integral(h, Side::Left)?;
    let r = one_integral(h, Side::Right)?;
    Ok(proportional(&l, &r))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralFactorWitness {
    pub left_integral: Vec<Scalar>,
    pub right_integral: Vec<Scalar>,
    /// Λ_D^l = Λ_A^l (x) u
    pub u: Option<Vec<Scalar>>,
    /// Λ_D^r = v (x) Λ_H^r
    pub v: Option<Vec<Scalar>>,
    pub unimodular: bool,
    /// For unimodular D: whether Λ_D is a multiple of Λ_A^l (x) Λ_H^r.
    pub product_form: Option<bool>,
}

impl IntegralFactorWitness {
    pub fn found(&self) -> bool {
        self.u.is_some() && self.v.is_some() && self.product_form != Some(false)
    }
}

fn kron_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().flat_map(|p| y.iter().map(move |q| p * q)).collect()
}

/// Solve target = fixed (x) w (fixed_left) or target = w (x) fixed for w.
fn solve_factor(field: Field, target: &[Scalar], fixed: &[Scalar], other_dim: usize, fixed_left: bool) -> Result<Option<Vec<Scalar>>> {
    let id = Matrix::identity(field, other_dim);
    let col = Matrix::from_columns(field, fixed.len(), &[fixed.to_vec()])?;
    let system = if fixed_left { col.kron(&id) } else { id.kron(&col) };
    let rhs = Matrix::from_columns(field, target.len(), &[target.to_vec()])?;
    Ok(match solve_linear(&system, &rhs)? {
        Solution::Inconsistent => None,
        Solution::Affine { particular, .. } => Some(particular.column(0)),
    })
}

/// Witnesses u in H and v in A for the integrals of a product D built on
/// A (x) H, with basis index a * dim H + h.
pub fn integral_factor_check(d: &Hopf, a: &Hopf, h: &Hopf) -> Result<IntegralFactorWitness> {
    if d.dim() != a.dim() * h.dim() {
        return Err(Error::Structural(format!(
            "no product structure: dim {} is not {} * {}",
            d.dim(),
            a.dim(),
            h.dim()
        )));
    }
    if d.field() != a.field() || d.field() != h.field() {
        return Err(Error::FieldMismatch(a.field(), h.field()));
    }
    let f = d.field();
    let dl = one_integral(d, Side::Left)?;
    let dr = one_integral(d, Side::Right)?;
    let al = one_integral(a, Side::Left)?;
    let hr = one_integral(h, Side::Right)?;
    let u = solve_factor(f, &dl, &al, h.dim(), true)?;
    let v = solve_factor(f, &dr, &hr, a.dim(), false)?;
    let uni = proportional(&dl, &dr);
    let product_form = uni.then(|| proportional(&kron_vec(&al, &hr), &dl));
    Ok(IntegralFactorWitness {
        left_integral: dl,
        right_integral: dr,
        u,
        v,
        unimodular: uni,
        product_form,
    })
}

/// ε(Λ^l) ≠ 0.
pub fn maschke_semisimple(h: &Hopf) -> bool {
    integrals(h, Side::Left)
        .basis
        .iter()
        .any(|l| !h.apply_counit(l).is_zero())
}

pub fn cosemisimple(h: &Hopf) -> Result<bool> {
    Ok(maschke_semisimple(&dual(h)?))
}

fn antipode_squared(h: &Hopf) -> LinMap {
    h.antipode().compose(h.antipode()).expect("square antipode")
}

pub fn trace_s_squared(h: &Hopf) -> Scalar {
    let s2 = antipode_squared(h);
    (0..h.dim()).fold(h.field().zero(), |acc, i| &acc + &s2.get(i, i))
}

pub fn involutory(h: &Hopf) -> bool {
    antipode_squared(h) == LinMap::identity(h.field(), h.dim())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadfordCheck {
    pub trace_s2: Scalar,
    /// λ(Λ) for the unnormalized dual right integral λ.
    pub pairing: Scalar,
    /// Whether λ could be scaled to λ(Λ) = 1.
    pub normalized: bool,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl RadfordCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn pair(x: &[Scalar], y: &[Scalar], field: Field) -> Scalar {
    x.iter().zip(y).fold(field.zero(), |acc, (p, q)| &acc + &(p * q))
}

/// tr(S²) = ε(Λ) λ(1) with λ a right integral of the dual and λ(Λ) = 1.
/// When λ(Λ) = 0 the identity is compared in the form
/// tr(S²) λ(Λ) = ε(Λ) λ(1).
pub fn radford_identity_check(h: &Hopf) -> Result<RadfordCheck> {
    let f = h.field();
    let lambda_h = one_integral(h, Side::Left)?;
    let lambda_dual = one_integral(&dual(h)?, Side::Right)?;
    let tr = trace_s_squared(h);
    let pairing = pair(&lambda_dual, &lambda_h, f);
    let eps = h.apply_counit(&lambda_h);
    let at_one = pair(&lambda_dual, h.unit(), f);
    if pairing.is_zero() {
        return Ok(RadfordCheck {
            lhs: &tr * &pairing,
            rhs: &eps * &at_one,
            trace_s2: tr,
            pairing,
            normalized: false,
        });
    }
    let rhs = &(&eps * &at_one) * &pairing.inv()?;
    Ok(RadfordCheck {
        lhs: tr.clone(),
        rhs,
        trace_s2: tr,
        pairing,
        normalized: true,
    })
}

/// Nondegeneracy of T(a, b) = tr(L_a L_b) for the algebra with the given
/// multiplication (n x n² map). Characteristic zero only.
pub fn trace_form_nondegenerate(field: Field, mult: &LinMap) -> Result<bool> {
    if field.characteristic() != 0 {
        return Err(Error::Structural(format!(
            "trace form test needs characteristic zero, field is {field}"
        )));
    }
    let n = mult.rows();
    if mult.cols() != n * n {
        return Err(Error::Dimension(format!("multiplication is {}x{}", n, mult.cols())));
    }
    let t: Vec<Scalar> = (0..n)
        .map(|k| (0..n).fold(field.zero(), |acc, l| &acc + &mult.get(l, k * n + l)))
        .collect();
    let mut gram = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            let v = mult
                .column(i * n + j)
                .iter()
                .fold(field.zero(), |acc, (k, x)| &acc + &(x * &t[*k]));
            gram.set(i, j, v);
        }
    }
    Ok(gram.rank() == n)
}

pub fn semisimplicity_oracle(h: &Hopf) -> Result<bool> {
    trace_form_nondegenerate(h.field(), h.mult())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharRegime {
    Zero,
    /// p > (dim H)²
    PLarge,
    PSmall,
}

impl CharRegime {
    pub fn of(field: Field, dim: usize) -> CharRegime {
        let p = field.characteristic() as u128;
        let d = dim as u128;
        if p == 0 {
            CharRegime::Zero
        } else if p > d * d {
            CharRegime::PLarge
        } else {
            CharRegime::PSmall
        }
    }
}

impl fmt::Display for CharRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharRegime::Zero => write!(f, "zero"),
            CharRegime::PLarge => write!(f, "p_large"),
            CharRegime::PSmall => write!(f, "p_small"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagStatus {
    Verified,
    Falsified,
    NotApplicable,
}

impl fmt::Display for FlagStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlagStatus::Verified => write!(f, "verified"),
            FlagStatus::Falsified => write!(f, "falsified"),
            FlagStatus::NotApplicable => write!(f, "not applicable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyFlag {
    pub name: &'static str,
    pub status: FlagStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub dim: usize,
    pub semisimple: bool,
    pub cosemisimple: bool,
    pub involutory: bool,
    pub trace_s2: Scalar,
}

impl Profile {
    pub fn of(h: &Hopf) -> Result<Profile> {
        Ok(Profile {
            dim: h.dim(),
            semisimple: maschke_semisimple(h),
            cosemisimple: cosemisimple(h)?,
            involutory: involutory(h),
            trace_s2: trace_s_squared(h),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub field: Field,
    pub dim: usize,
    pub semisimple: bool,
    pub cosemisimple: bool,
    pub involutory: bool,
    pub trace_s2: Scalar,
    pub unimodular: bool,
    pub char_regime: CharRegime,
    pub left_integral_dim: usize,
    pub right_integral_dim: usize,
    pub radford: RadfordCheck,
    /// Trace form verdict, characteristic zero only.
    pub trace_form: Option<bool>,
    pub factors: Vec<Profile>,
    pub consistency: Vec<ConsistencyFlag>,
}

impl ClassificationReport {
    pub fn consistent(&self) -> bool {
        self.consistency.iter().all(|c| c.status != FlagStatus::Falsified)
    }

    pub fn falsified(&self) -> Vec<&'static str> {
        self.consistency
            .iter()
            .filter(|c| c.status == FlagStatus::Falsified)
            .map(|c| c.name)
            .collect()
    }
}

fn all_equal(values: &[bool]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// Compute every flag of H and, given a factorization that can be
/// certified by reconstruction, check each implication licensed in the
/// characteristic of the field.
pub fn classify(h: &Hopf, factors: Option<(&[SubHopf], &BracketTree)>) -> Result<ClassificationReport> {
    let field = h.field();
    let me = Profile::of(h)?;
    let left = integrals(h, Side::Left);
    let right = integrals(h, Side::Right);
    let uni = match (left.integral(), right.integral()) {
        (Some(l), Some(r)) => proportional(l, r),
        _ => false,
    };
    let radford = radford_identity_check(h)?;
    let regime = CharRegime::of(field, h.dim());
    let trace_form = match regime {
        CharRegime::Zero => Some(semisimplicity_oracle(h)?),
        _ => None,
    };

    let mut parts: Vec<Profile> = Vec::new();
    let mut certified_trace: Option<Scalar> = None;
    if let Some((subs, sigma)) = factors {
        let cert = reconstruct(h, subs, sigma)?;
        certified_trace = Some(trace_s_squared(&cert.rebuilt));
        for s in subs {
            parts.push(Profile::of(&s.to_hopf()?)?);
        }
    }

    let status = |applies: bool, ok: bool| match (applies, ok) {
        (false, _) => FlagStatus::NotApplicable,
        (true, true) => FlagStatus::Verified,
        (true, false) => FlagStatus::Falsified,
    };
    let mut flags = Vec::new();
    let has = !parts.is_empty();
    let tr_nz = !me.trace_s2.is_zero();
    let both = me.semisimple && me.cosemisimple;

    flags.push(ConsistencyFlag {
        name: "integral spaces one-dimensional",
        status: status(true, left.dim == 1 && right.dim == 1),
    });
    flags.push(ConsistencyFlag {
        name: "radford trace formula",
        status: status(true, radford.holds()),
    });
    flags.push(ConsistencyFlag {
        name: "semisimple and cosemisimple iff tr(S^2) != 0",
        status: status(true, both == tr_nz),
    });
    if let Some(tf) = trace_form {
        flags.push(ConsistencyFlag {
            name: "maschke agrees with trace form",
            status: status(true, tf == me.semisimple),
        });
    }
    flags.push(ConsistencyFlag {
        name: "involutory implies tr(S^2) = dim",
        status: status(me.involutory, me.trace_s2 == field.from_i64(h.dim() as i64)),
    });

    let parts_both = parts.iter().all(|p| p.semisimple && p.cosemisimple);
    let parts_tr = parts.iter().all(|p| !p.trace_s2.is_zero());
    let product = parts.iter().fold(field.one(), |acc, p| &acc * &p.trace_s2);
    flags.push(ConsistencyFlag {
        name: "trace multiplicativity",
        status: status(
            has,
            has && product == me.trace_s2 && certified_trace.as_ref() == Some(&me.trace_s2),
        ),
    });
    flags.push(ConsistencyFlag {
        name: "factors semisimple-cosemisimple iff product is",
        status: status(has, all_equal(&[both, parts_both, parts_tr, tr_nz])),
    });
    flags.push(ConsistencyFlag {
        name: "semisimple product has semisimple factors",
        status: status(has && me.semisimple, parts.iter().all(|p| p.semisimple)),
    });
    flags.push(ConsistencyFlag {
        name: "cosemisimple product has cosemisimple factors",
        status: status(has && me.cosemisimple, parts.iter().all(|p| p.cosemisimple)),
    });
    let parts_inv = parts.iter().all(|p| p.involutory);
    flags.push(ConsistencyFlag {
        name: "involutory factors give involutory product",
        status: status(has && parts_inv, me.involutory),
    });

    let zero = regime == CharRegime::Zero;
    let mut v = vec![me.semisimple, me.cosemisimple, both, me.involutory, tr_nz];
    if has {
        v.extend([
            parts.iter().all(|p| p.semisimple),
            parts.iter().all(|p| p.cosemisimple),
            parts_both,
            parts_inv,
            parts_tr,
        ]);
    }
    flags.push(ConsistencyFlag {
        name: "characteristic zero equivalences",
        status: status(zero, all_equal(&v)),
    });

    let p = field.characteristic() as u128;
    let parts_large = has && parts.iter().all(|q| p > (q.dim as u128).pow(2));
    let large = p != 0 && (regime == CharRegime::PLarge || parts_large);
    let mut w = vec![both, me.involutory, tr_nz];
    if has {
        w.extend([parts_both, parts_inv, parts_tr]);
    }
    flags.push(ConsistencyFlag {
        name: "large characteristic equivalences",
        status: status(large, all_equal(&w)),
    });

    Ok(ClassificationReport {
        field,
        dim: h.dim(),
        semisimple: me.semisimple,
        cosemisimple: me.cosemisimple,
        involutory: me.involutory,
        trace_s2: me.trace_s2,
        unimodular: uni,
        char_regime: regime,
        left_integral_dim: left.dim,
        right_integral_dim: right.dim,
        radford,
        trace_form,
        factors: parts,
        consistency: flags,
    })
}
