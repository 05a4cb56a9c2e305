//! Exact scalars: the rationals, cyclotomic fields Q(zeta_n) and prime fields F_p.
//!
//! Cyclotomic elements are coefficient vectors of length phi(n) in the power
//! basis 1, zeta, ..., zeta^(phi(n)-1), always reduced modulo the n-th
//! cyclotomic polynomial, so structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Ground field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Cyclotomic(u32),
    Prime(u64),
}

impl Field {
    pub fn cyclotomic(n: u32) -> Result<Field> {
        if n == 0 {
            return Err(Error::InvalidField("cyclotomic order must be positive".into()));
        }
        Ok(Field::Cyclotomic(n))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    /// Dimension over the prime field (phi(n) for cyclotomic fields).
    pub fn degree(&self) -> usize {
        match self {
            Field::Cyclotomic(n) => totient(*n as u64) as usize,
            _ => 1,
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Cyclotomic(n) => Scalar::Cyclotomic(Cyclo {
                n,
                coeffs: vec![BigRational::zero(); self.degree()],
            }),
            Field::Prime(p) => Scalar::Prime(Fp { p, r: 0 }),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every field")
    }

    /// Image of a rational number; fails in F_p when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Cyclotomic(n) => {
                let mut coeffs = vec![BigRational::zero(); self.degree()];
                coeffs[0] = q.clone();
                Ok(Scalar::Cyclotomic(Cyclo { n, coeffs }))
            }
            Field::Prime(p) => {
                let num = residue(q.numer(), p);
                let den = residue(q.denom(), p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Prime(Fp {
                    p,
                    r: mul_mod(num, inv_mod(den, p), p),
                }))
            }
        }
    }

    /// The generator zeta_n of a cyclotomic field.
    pub fn zeta(&self) -> Result<Scalar> {
        match *self {
            Field::Cyclotomic(n) => Ok(Scalar::Cyclotomic(Cyclo::monomial(n, 1))),
            other => Err(Error::InvalidField(format!("{other} has no distinguished generator"))),
        }
    }

    /// A primitive `order`-th root of unity in this field.
    pub fn root_of_unity(&self, order: u64) -> Result<Scalar> {
        let missing = || Error::NoRootOfUnity {
            field: *self,
            order,
        };
        if order == 0 {
            return Err(missing());
        }
        match *self {
            Field::Rationals => match order {
                1 => Ok(self.one()),
                2 => Ok(self.from_i64(-1)),
                _ => Err(missing()),
            },
            Field::Cyclotomic(n) => {
                let m = n as u64;
                if m.is_multiple_of(order) {
                    Ok(Scalar::Cyclotomic(Cyclo::monomial(n, m / order)))
                } else if m % 2 == 1 && (2 * m).is_multiple_of(order) {
                    // -zeta_m is a primitive 2m-th root when m is odd.
                    let neg_zeta = -&Scalar::Cyclotomic(Cyclo::monomial(n, 1));
                    Ok(neg_zeta.pow(2 * m / order))
                } else {
                    Err(missing())
                }
            }
            Field::Prime(p) => {
                if (p - 1) % order != 0 {
                    return Err(missing());
                }
                let prime_divisors = prime_factors(order);
                for a in 2..p.max(3) {
                    let b = pow_mod(a % p, (p - 1) / order, p);
                    if b == 0 {
                        continue;
                    }
                    if prime_divisors.iter().all(|q| pow_mod(b, order / q, p) != 1) {
                        return Ok(Scalar::Prime(Fp { p, r: b }));
                    }
                }
                // order 1 in F_2 and similar degenerate cases
                Ok(self.one())
            }
        }
    }

    /// Parse a scalar in the textual syntax of this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let fail = |reason: &str| Error::ScalarParse {
            text: text.to_string(),
            field: *self,
            reason: reason.to_string(),
        };
        let t = text.trim();
        match *self {
            Field::Rationals | Field::Prime(_) => {
                let q = parse_rational(t).ok_or_else(|| fail("expected a rational a/b"))?;
                self.from_rational(&q)
            }
            Field::Cyclotomic(n) => {
                if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                    let d = self.degree();
                    let mut coeffs = Vec::with_capacity(d);
                    if !inner.trim().is_empty() {
                        for part in inner.split(',') {
                            coeffs.push(
                                parse_rational(part.trim())
                                    .ok_or_else(|| fail("bad rational coefficient"))?,
                            );
                        }
                    }
                    if coeffs.len() > d {
                        return Err(fail("more coefficients than the field degree"));
                    }
                    coeffs.resize(d, BigRational::zero());
                    Ok(Scalar::Cyclotomic(Cyclo { n, coeffs }))
                } else {
                    let q = parse_rational(t).ok_or_else(|| fail("expected [c0,c1,...]"))?;
                    self.from_rational(&q)
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Cyclotomic(n) => write!(f, "Cyclotomic({n})"),
            Field::Prime(p) => write!(f, "Fp({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        parse_field(s)
    }
}

/// Parse `Q`, `Cyclotomic(n)` or `Fp(p)`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
        return Ok(Field::Rationals);
    }
    let (kind, arg) = t
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(|| Error::InvalidField(format!("unknown field {text:?}")))?;
    let value: u64 = arg
        .parse()
        .map_err(|_| Error::InvalidField(format!("bad parameter in {text:?}")))?;
    match kind.to_ascii_lowercase().as_str() {
        "cyclotomic" => {
            let n = u32::try_from(value)
                .map_err(|_| Error::InvalidField(format!("cyclotomic order {value} too large")))?;
            Field::cyclotomic(n)
        }
        "fp" | "gf" => Field::prime(value),
        _ => Err(Error::InvalidField(format!("unknown field kind {kind:?}"))),
    }
}

/// Element of Q(zeta_n) in the reduced power basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    fn monomial(n: u32, k: u64) -> Cyclo {
        let table = cyclo_table(n);
        let d = table.degree;
        let k = (k % n as u64) as usize;
        let coeffs = if k < d {
            let mut c = vec![BigRational::zero(); d];
            c[k] = BigRational::one();
            c
        } else {
            // zeta^k for k < n <= 2d - 1 is covered by the reduction table
            table.power_residue(k)
        };
        Cyclo { n, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn mul(&self, other: &Cyclo) -> Cyclo {
        let table = cyclo_table(self.n);
        let d = table.degree;
        let mut full = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigRational> = full[..d].to_vec();
        for (k, c) in full.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in out.iter_mut().zip(&table.reductions[k - d]) {
                if !r.is_zero() {
                    *slot += c * r;
                }
            }
        }
        Cyclo { n: self.n, coeffs: out }
    }

    /// Inverse by solving the phi(n) x phi(n) system (multiplication by self) c = 1.
    fn inv(&self) -> Option<Cyclo> {
        let d = self.coeffs.len();
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            columns.push(self.mul(&Cyclo::monomial(self.n, j as u64)).coeffs);
        }
        // augmented row-major system
        let mut rows: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = columns.iter().map(|c| c[i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, pivot);
            let inv = rows[col][col].recip();
            for x in rows[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for c in col..=d {
                        let delta = &factor * &rows[col][c];
                        rows[r][c] -= delta;
                    }
                }
            }
        }
        Some(Cyclo {
            n: self.n,
            coeffs: rows.into_iter().map(|r| r[d].clone()).collect(),
        })
    }
}

/// Residue in F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
    r: u64,
}

impl Fp {
    pub fn residue(&self) -> u64 {
        self.r
    }
}

/// An exact field element. Binary operators panic when the operands live in
/// different fields; the `checked_*` methods report that as an error instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclo),
    Prime(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Cyclotomic(c) => Field::Cyclotomic(c.n),
            Scalar::Prime(x) => Field::Prime(x.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Cyclotomic(c) => c.coeffs.iter().all(Zero::is_zero),
            Scalar::Prime(x) => x.r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Cyclotomic(c) => {
                c.coeffs[0].is_one() && c.coeffs[1..].iter().all(Zero::is_zero)
            }
            Scalar::Prime(x) => x.r == 1 % x.p,
        }
    }

    /// The value as a rational number, when it lies in the prime subfield Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Cyclotomic(c) if c.coeffs[1..].iter().all(Zero::is_zero) => {
                Some(c.coeffs[0].clone())
            }
            _ => None,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.inv().ok_or(Error::DivisionByZero)?),
            Scalar::Prime(x) => Scalar::Prime(Fp {
                p: x.p,
                r: inv_mod(x.r, x.p),
            }),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative order, searched up to `bound`.
    pub fn multiplicative_order(&self, bound: u64) -> Option<u64> {
        let one = self.field().one();
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc == one {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", rational_text(q)),
            Scalar::Cyclotomic(c) => {
                let parts: Vec<String> = c.coeffs.iter().map(rational_text).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Scalar::Prime(x) => write!(f, "{}", x.r),
        }
    }
}

fn rational_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    if t.is_empty() {
        return None;
    }
    match t.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().ok()?;
            let den: BigInt = b.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => Some(BigRational::from_integer(t.parse().ok()?)),
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.n == b.n => {
                Scalar::Cyclotomic(Cyclo {
                    n: a.n,
                    coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
                })
            }
            (Scalar::Prime(a), Scalar::Prime(b)) if a.p == b.p => Scalar::Prime(Fp {
                p: a.p,
                r: ((a.r as u128 + b.r as u128) % a.p as u128) as u64,
            }),
            _ => mismatch(self, other),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, other: &Scalar) -> Scalar {
        self + &(-other)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(Cyclo {
                n: a.n,
                coeffs: a.coeffs.iter().map(|x| -x).collect(),
            }),
            Scalar::Prime(a) => Scalar::Prime(Fp {
                p: a.p,
                r: (a.p - a.r) % a.p,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.n == b.n => {
                Scalar::Cyclotomic(a.mul(b))
            }
            (Scalar::Prime(a), Scalar::Prime(b)) if a.p == b.p => Scalar::Prime(Fp {
                p: a.p,
                r: mul_mod(a.r, b.r, a.p),
            }),
            _ => mismatch(self, other),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, other: Scalar) -> Scalar {
        &self + &other
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, other: Scalar) -> Scalar {
        &self - &other
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, other: Scalar) -> Scalar {
        &self * &other
    }
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials

struct CycloTable {
    degree: usize,
    /// reductions[k] = x^(degree + k) mod Phi_n, for 0 <= k < degree - 1 (at least one entry).
    reductions: Vec<Vec<BigRational>>,
}

impl CycloTable {
    fn power_residue(&self, k: usize) -> Vec<BigRational> {
        if k < self.degree {
            let mut c = vec![BigRational::zero(); self.degree];
            c[k] = BigRational::one();
            return c;
        }
        self.reductions[k - self.degree].clone()
    }
}

fn cyclo_table(n: u32) -> Arc<CycloTable> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(t);
    }
    let table = Arc::new(build_cyclo_table(n));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert(table)
        .clone()
}

fn build_cyclo_table(n: u32) -> CycloTable {
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    // x^degree = -(phi_0 + ... + phi_{d-1} x^{d-1}) since Phi_n is monic
    let mut current: Vec<BigRational> = phi[..degree]
        .iter()
        .map(|c| BigRational::from_integer(-c))
        .collect();
    // enough rows to reduce products (degree 2d-2) and monomials zeta^k, k < n
    let rows = (degree.max(1) - 1).max(n as usize - degree.min(n as usize)).max(1);
    let mut reductions = Vec::with_capacity(rows);
    for _ in 0..rows {
        reductions.push(current.clone());
        // multiply by x and reduce
        let top = current[degree - 1].clone();
        let mut next = vec![BigRational::zero(); degree];
        for i in (1..degree).rev() {
            next[i] = current[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, c) in phi[..degree].iter().enumerate() {
                next[i] -= &top * BigRational::from_integer(c.clone());
            }
        }
        current = next;
    }
    CycloTable { degree, reductions }
}

/// Integer coefficients (constant term first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_poly_div(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_poly_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        // den is monic
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    quot
}

// ---------------------------------------------------------------------------
// integer helpers

pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime
    pow_mod(a, p - 2, p)
}

fn residue(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = v.mod_floor(&m);
    u64::try_from(r.abs()).expect("residue fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::Rational(BigRational::new(a.into(), b.into()))
    }

    #[test]
    fn parse_field_kinds() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rationals);
        let f = parse_field("Cyclotomic(3)").unwrap();
        assert_eq!(f, Field::Cyclotomic(3));
        assert_eq!(f.degree(), 2);
        assert!(matches!(parse_field("Fp(4)"), Err(Error::InvalidField(_))));
        assert!(parse_field("Cyclotomic(0)").is_err());
        assert!(parse_field("Reals").is_err());
        assert_eq!(parse_field("Fp(37)").unwrap().characteristic(), 37);
    }

    #[test]
    fn fraction_arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(q(1, 2).checked_div(&q(0, 1)), Err(Error::DivisionByZero));
        let c = Field::Cyclotomic(3).one();
        assert!(matches!(q(1, 2).checked_add(&c), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn zeta4_squares_to_minus_one() {
        let f = Field::Cyclotomic(4);
        let z = f.zeta().unwrap();
        assert_eq!(&z * &z, f.from_i64(-1));
    }

    #[test]
    fn inverse_of_one_plus_zeta3() {
        // (1 + zeta)^-1 = -zeta, checked against an extended Euclid oracle in tests/scalars.rs
        let f = Field::Cyclotomic(3);
        let z = f.zeta().unwrap();
        let a = &f.one() + &z;
        assert_eq!(a.inv().unwrap(), -&z);
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        let f = Field::Cyclotomic(6);
        let w = f.root_of_unity(3).unwrap();
        assert_eq!(w, Scalar::Cyclotomic(Cyclo::monomial(6, 2)));
        assert_eq!(w.multiplicative_order(10), Some(3));
        assert_eq!(Field::Rationals.root_of_unity(2).unwrap(), q(-1, 1));
        assert!(Field::Rationals.root_of_unity(3).is_err());
        let r = Field::Prime(5).root_of_unity(4).unwrap();
        assert_eq!(r.multiplicative_order(10), Some(4));
        // Q(zeta_3) contains -1 and zeta_6
        let f3 = Field::Cyclotomic(3);
        assert_eq!(f3.root_of_unity(6).unwrap().multiplicative_order(10), Some(6));
        assert_eq!(f3.root_of_unity(2).unwrap(), f3.from_i64(-1));
        assert!(f3.root_of_unity(4).is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        let f = Field::Cyclotomic(3);
        let s = f.parse_scalar("[1/2, -3]").unwrap();
        assert_eq!(s.to_string(), "[1/2,-3]");
        assert_eq!(f.parse_scalar(&s.to_string()).unwrap(), s);
        assert_eq!(f.parse_scalar("[2]").unwrap(), f.from_i64(2));
        assert!(f.parse_scalar("[1,2,3]").is_err());
        let p = Field::Prime(7);
        assert_eq!(p.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(Field::Rationals.parse_scalar("-4/6").unwrap(), q(-2, 3));
        assert!(Field::Rationals.parse_scalar("1/0").is_err());
    }

    #[test]
    fn prime_detection() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }
}
