//! Builders: group algebras and their duals, Taft algebras, quantum linear
//! spaces, double cross products, double bicrossproducts, biproducts and
//! Drinfeld doubles of finite groups. Antipodes are always obtained by
//! solving the convolution equation, and every result is verified.

use crate::error::{Error, Result};
use crate::hopf::{braiding_between, Hopf, HopfData};
use crate::linalg::{apply_kron, eval_chain, flatten, unflatten, Accumulator, LinMap, SparseVec};
use crate::scalars::{Field, Scalar};
use crate::yd::{Character, FiniteAbelianGroup, GroupElem, RootTable, YdData};

/// Finite group given by its multiplication table; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidDatum("malformed group table".into()));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(Error::InvalidDatum("element 0 must be the identity".into()));
        }
        for a in 0..n {
            let mut row = table[a].clone();
            row.sort_unstable();
            if row != (0..n).collect::<Vec<_>>() {
                return Err(Error::InvalidDatum(format!("row {a} of the group table is not a permutation")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidDatum("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table })
    }

    pub fn cyclic(n: u32) -> FiniteGroup {
        FiniteGroup::abelian(&FiniteAbelianGroup::cyclic(n))
    }

    pub fn abelian(g: &FiniteAbelianGroup) -> FiniteGroup {
        let elems = g.elements();
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| g.index_of(&g.mul(a, b))).collect())
            .collect();
        FiniteGroup {
            names: elems.iter().map(|e| abelian_name(g, e)).collect(),
            table,
        }
    }

    /// Symmetric group on {1..n}, permutations in lexicographic order of images.
    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&(0..n).map(|i| a[b[i]]).collect()))
                    .collect()
            })
            .collect();
        FiniteGroup {
            names: perms.iter().map(|p| cycle_notation(p)).collect(),
            table,
        }
    }

    /// "Z6", "Z2xZ3", "S3".
    pub fn parse(text: &str) -> Result<FiniteGroup> {
        let t = text.trim();
        if let Some(n) = t.strip_prefix('S').and_then(|s| s.parse::<usize>().ok()) {
            if (1..=5).contains(&n) {
                return Ok(FiniteGroup::symmetric(n));
            }
            return Err(Error::Parse(format!("symmetric group S{n} is not supported")));
        }
        Ok(FiniteGroup::abelian(&FiniteAbelianGroup::parse(t)?))
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("group")
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// "1", "g", "g^2" for cyclic groups; "g1^a g2^b" in higher rank.
pub fn abelian_name(g: &FiniteAbelianGroup, e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| {
            let base = if g.rank() == 1 { "g".to_string() } else { format!("g{}", i + 1) };
            if a == 1 {
                base
            } else {
                format!("{base}^{a}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// kG: basis the group elements, Delta g = g (x) g.
pub fn group_algebra(g: &FiniteGroup, field: Field) -> Result<Hopf> {
    let n = g.order();
    let mult = (0..n * n)
        .map(|ab| SparseVec::unit(g.mul(ab / n, ab % n), field))
        .collect();
    let comult = (0..n).map(|a| SparseVec::unit(a * n + a, field)).collect();
    Hopf::new(HopfData {
        field,
        basis: g.names().to_vec(),
        mult: LinMap::new(field, n, mult)?,
        unit: unit_vec(field, n, 0),
        comult: LinMap::new(field, n * n, comult)?,
        counit: vec![field.one(); n],
        antipode: None,
        yd: None,
    })
}

/// k^G: basis the indicator functions delta_g.
pub fn dual_group_algebra(g: &FiniteGroup, field: Field) -> Result<Hopf> {
    let n = g.order();
    let mult = (0..n * n)
        .map(|ab| {
            let (a, b) = (ab / n, ab % n);
            if a == b {
                SparseVec::unit(a, field)
            } else {
                SparseVec::new()
            }
        })
        .collect();
    let comult = (0..n)
        .map(|c| {
            SparseVec::from_terms(
                (0..n).map(|a| (a * n + g.mul(g.inv(a), c), field.one())),
            )
        })
        .collect();
    Hopf::new(HopfData {
        field,
        basis: g.names().iter().map(|x| format!("δ_{x}")).collect(),
        mult: LinMap::new(field, n, mult)?,
        unit: vec![field.one(); n],
        comult: LinMap::new(field, n * n, comult)?,
        counit: unit_vec(field, n, 0),
        antipode: None,
        yd: None,
    })
}

/// (m (x) m)(id (x) C (x) id)(u (x) v) for u, v in H (x) H.
fn tensor_square_product(mult: &LinMap, c: &LinMap, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let n = mult.rows();
    let nn = n * n;
    let uv = SparseVec::from_terms(
        u.iter()
            .flat_map(|(i, x)| v.iter().map(move |(j, y)| (i * nn + j, x * y))),
    );
    let id = LinMap::identity(mult.field(), n);
    let mid = apply_kron(&[&id, c, &id], &uv);
    apply_kron(&[mult, mult], &mid)
}

fn pow_product(mult: &LinMap, c: &LinMap, one: &SparseVec, factors: &[(&SparseVec, u32)]) -> SparseVec {
    let mut acc = one.clone();
    for (v, k) in factors {
        for _ in 0..*k {
            acc = tensor_square_product(mult, c, &acc, v);
        }
    }
    acc
}

fn monomial_name(vars: &[String], exps: &[u32]) -> String {
    let mut out = String::new();
    for (v, &a) in vars.iter().zip(exps) {
        match a {
            0 => {}
            1 => out.push_str(v),
            _ => out.push_str(&format!("{v}^{a}")),
        }
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

/// Taft algebra: g^n = 1, x^n = 0, xg = q gx, Delta g = g (x) g,
/// Delta x = x (x) 1 + g (x) x. Basis g^i x^j at index i*n + j.
pub fn taft(n: u32, q: &Scalar) -> Result<Hopf> {
    let field = q.field();
    if n < 2 || q.multiplicative_order(n as u64) != Some(n as u64) {
        return Err(Error::InvalidDatum(format!("{q} is not a primitive {n}-th root of unity")));
    }
    let nn = n as usize;
    let dim = nn * nn;
    let mut mult = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let (i, j, k, l) = (a / nn, a % nn, b / nn, b % nn);
            if j + l >= nn {
                mult.push(SparseVec::new());
            } else {
                let coeff = q.pow((j * k) as u64);
                mult.push(SparseVec::from_terms([(((i + k) % nn) * nn + j + l, coeff)]));
            }
        }
    }
    let mult = LinMap::new(field, dim, mult)?;
    let twist = LinMap::twist(field, dim, dim);
    let g = nn;
    let x = 1;
    let one_one = SparseVec::unit(0, field);
    let dg = SparseVec::unit(g * dim + g, field);
    let dx = SparseVec::from_terms([(x * dim, field.one()), (g * dim + x, field.one())]);
    let comult = (0..dim)
        .map(|a| pow_product(&mult, &twist, &one_one, &[(&dg, (a / nn) as u32), (&dx, (a % nn) as u32)]))
        .collect();
    let vars = ["g".to_string(), "x".to_string()];
    Hopf::new(HopfData {
        field,
        basis: (0..dim)
            .map(|a| monomial_name(&vars, &[(a / nn) as u32, (a % nn) as u32]))
            .collect(),
        mult,
        unit: unit_vec(field, dim, 0),
        comult: LinMap::new(field, dim * dim, comult)?,
        counit: (0..dim).map(|a| if a % nn == 0 { field.one() } else { field.zero() }).collect(),
        antipode: None,
        yd: None,
    })
}

/// Sweedler's four-dimensional Hopf algebra, Taft(2, -1).
pub fn sweedler_h4(field: Field) -> Result<Hopf> {
    taft(2, &field.from_i64(-1))
}

/// Datum of a quantum linear space over a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QlsDatum {
    group: FiniteAbelianGroup,
    g: Vec<GroupElem>,
    chi: Vec<Character>,
    orders: Vec<u32>,
}

impl QlsDatum {
    /// Validates the datum; the nilpotency orders N_i are the orders of chi_i(g_i).
    pub fn new(group: FiniteAbelianGroup, g: Vec<GroupElem>, chi: Vec<Character>) -> Result<QlsDatum> {
        if g.len() != chi.len() {
            return Err(Error::InvalidDatum(format!(
                "{} group elements but {} characters",
                g.len(),
                chi.len()
            )));
        }
        for (i, gi) in g.iter().enumerate() {
            if !group.contains(gi) {
                return Err(Error::InvalidDatum(format!("g_{} is not an element of {group}", i + 1)));
            }
        }
        let e = group.exponent();
        let mut orders = Vec::with_capacity(g.len());
        for i in 0..g.len() {
            let k = chi[i].value_exponent(&group, &g[i]);
            let order = e / num_integer::gcd(e, k);
            if order <= 1 {
                return Err(Error::InvalidDatum(format!(
                    "chi_{0}(g_{0}) = 1, so N_{0} = 1",
                    i + 1
                )));
            }
            orders.push(order as u32);
            for j in 0..i {
                let s = chi[i].value_exponent(&group, &g[j]) + chi[j].value_exponent(&group, &g[i]);
                if !s.is_multiple_of(e) {
                    return Err(Error::InvalidDatum(format!(
                        "chi_{}(g_{}) chi_{}(g_{}) != 1",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(QlsDatum {
            group,
            g,
            chi,
            orders,
        })
    }

    /// As `new`, additionally checking the supplied orders.
    pub fn with_orders(
        group: FiniteAbelianGroup,
        g: Vec<GroupElem>,
        chi: Vec<Character>,
        orders: &[u32],
    ) -> Result<QlsDatum> {
        let d = QlsDatum::new(group, g, chi)?;
        if d.orders != orders {
            return Err(Error::InvalidDatum(format!(
                "N = {orders:?} but the orders of chi_i(g_i) are {:?}",
                d.orders
            )));
        }
        Ok(d)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn degrees(&self) -> &[GroupElem] {
        &self.g
    }

    pub fn characters(&self) -> &[Character] {
        &self.chi
    }

    pub fn dim(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }
}

/// Braided Hopf algebra generated by skew-commuting nilpotent primitives.
pub fn quantum_linear_space(datum: &QlsDatum, field: Field) -> Result<Hopf> {
    let group = datum.group();
    let roots = RootTable::new(field, group.exponent())?;
    let theta = datum.rank();
    let dims: Vec<usize> = datum.orders().iter().map(|&n| n as usize).collect();
    let dim = datum.dim();
    let exps: Vec<Vec<u32>> = (0..dim)
        .map(|k| {
            let mut d = vec![0; theta];
            unflatten(k, &dims, &mut d);
            d.into_iter().map(|x| x as u32).collect()
        })
        .collect();
    // chi_j(g_i) as a power of omega
    let q: Vec<Vec<u64>> = (0..theta)
        .map(|i| (0..theta).map(|j| datum.chi[j].value_exponent(group, &datum.g[i])).collect())
        .collect();
    let e = roots.order();
    let mut mult = Vec::with_capacity(dim * dim);
    for a in &exps {
        for b in &exps {
            if (0..theta).any(|i| a[i] + b[i] >= datum.orders[i]) {
                mult.push(SparseVec::new());
                continue;
            }
            let mut k = 0u64;
            for i in 0..theta {
                for j in 0..i {
                    k = (k + q[i][j] * (a[i] as u64 * b[j] as u64 % e)) % e;
                }
            }
            let target: Vec<usize> = (0..theta).map(|i| (a[i] + b[i]) as usize).collect();
            mult.push(SparseVec::from_terms([(flatten(&target, &dims), roots.power(k).clone())]));
        }
    }
    let mult = LinMap::new(field, dim, mult)?;

    let degrees: Vec<GroupElem> = exps
        .iter()
        .map(|a| {
            (0..theta).fold(group.identity(), |acc, i| group.mul(&acc, &group.pow(&datum.g[i], a[i] as u64)))
        })
        .collect();
    let chars: Vec<Character> = exps
        .iter()
        .map(|a| {
            let c: Vec<u32> = (0..group.rank())
                .map(|r| {
                    (0..theta)
                        .map(|i| datum.chi[i].exponents()[r] * a[i])
                        .sum::<u32>()
                })
                .collect();
            Character::new(group, c).expect("rank matches")
        })
        .collect();
    let yd = YdData::diagonal(group.clone(), &roots, degrees, &chars)?;
    let c = crate::yd::braiding(&yd, &yd, field)?;

    let one = SparseVec::unit(0, field);
    let gens: Vec<SparseVec> = (0..theta)
        .map(|i| {
            let mut unit_exp = vec![0usize; theta];
            unit_exp[i] = 1;
            let xi = flatten(&unit_exp, &dims);
            SparseVec::from_terms([(xi * dim, field.one()), (xi, field.one())])
        })
        .collect();
    let comult = exps
        .iter()
        .map(|a| {
            let factors: Vec<(&SparseVec, u32)> = gens.iter().zip(a).map(|(g, &k)| (g, k)).collect();
            pow_product(&mult, &c, &one, &factors)
        })
        .collect();
    let vars: Vec<String> = if theta == 1 {
        vec!["x".into()]
    } else {
        (1..=theta).map(|i| format!("x{i}")).collect()
    };
    Hopf::new(HopfData {
        field,
        basis: exps.iter().map(|a| monomial_name(&vars, a)).collect(),
        mult,
        unit: unit_vec(field, dim, 0),
        comult: LinMap::new(field, dim * dim, comult)?,
        counit: unit_vec(field, dim, 0),
        antipode: None,
        yd: Some(yd),
    })
}

fn require_identity(name: &str, lhs: &LinMap, rhs: &LinMap) -> Result<()> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((col, row, a, b)) => Err(Error::InvalidDatum(format!(
            "{name} fails at input {col}, output {row}: {a} vs {b}"
        ))),
    }
}

/// alpha : H (x) A -> A and beta : H (x) A -> H, checked to be a left
/// H-module coalgebra and a right A-module coalgebra.
#[derive(Debug, Clone)]
pub struct MatchedPairData {
    a: Hopf,
    h: Hopf,
    alpha: LinMap,
    beta: LinMap,
}

impl MatchedPairData {
    pub fn new(a: Hopf, h: Hopf, alpha: LinMap, beta: LinMap) -> Result<MatchedPairData> {
        if a.field() != h.field() {
            return Err(Error::FieldMismatch(a.field(), h.field()));
        }
        let (na, nh) = (a.dim(), h.dim());
        if alpha.rows() != na || alpha.cols() != nh * na {
            return Err(Error::Dimension(format!("alpha must be {na}x{}", nh * na)));
        }
        if beta.rows() != nh || beta.cols() != nh * na {
            return Err(Error::Dimension(format!("beta must be {nh}x{}", nh * na)));
        }
        let f = a.field();
        let ia = LinMap::identity(f, na);
        let ih = LinMap::identity(f, nh);
        let ua = LinMap::vector(a.unit(), f);
        let uh = LinMap::vector(h.unit(), f);
        let ea = LinMap::covector(a.counit(), f);
        let eh = LinMap::covector(h.counit(), f);
        let cha = braiding_between(&h, &a)?;

        require_identity(
            "alpha associativity",
            &eval_chain(&[vec![h.mult(), &ia], vec![&alpha]])?,
            &eval_chain(&[vec![&ih, &alpha], vec![&alpha]])?,
        )?;
        require_identity("alpha unit", &eval_chain(&[vec![&uh, &ia], vec![&alpha]])?, &ia)?;
        require_identity(
            "alpha comultiplicativity",
            &a.comult().compose(&alpha)?,
            &eval_chain(&[vec![h.comult(), a.comult()], vec![&ih, &cha, &ia], vec![&alpha, &alpha]])?,
        )?;
        require_identity("alpha counit", &ea.compose(&alpha)?, &LinMap::kron(&[&eh, &ea]))?;

        require_identity(
            "beta associativity",
            &eval_chain(&[vec![&beta, &ia], vec![&beta]])?,
            &eval_chain(&[vec![&ih, a.mult()], vec![&beta]])?,
        )?;
        require_identity("beta unit", &eval_chain(&[vec![&ih, &ua], vec![&beta]])?, &ih)?;
        require_identity(
            "beta comultiplicativity",
            &h.comult().compose(&beta)?,
            &eval_chain(&[vec![h.comult(), a.comult()], vec![&ih, &cha, &ia], vec![&beta, &beta]])?,
        )?;
        require_identity("beta counit", &eh.compose(&beta)?, &LinMap::kron(&[&eh, &ea]))?;
        Ok(MatchedPairData { a, h, alpha, beta })
    }

    /// alpha(h (x) a) = epsilon(h) a and beta(h (x) a) = epsilon(a) h.
    pub fn trivial(a: Hopf, h: Hopf) -> Result<MatchedPairData> {
        let f = a.field();
        let alpha = LinMap::kron(&[&LinMap::covector(h.counit(), f), &LinMap::identity(f, a.dim())]);
        let beta = LinMap::kron(&[&LinMap::identity(f, h.dim()), &LinMap::covector(a.counit(), f)]);
        MatchedPairData::new(a, h, alpha, beta)
    }

    pub fn a(&self) -> &Hopf {
        &self.a
    }

    pub fn h(&self) -> &Hopf {
        &self.h
    }

    pub fn alpha(&self) -> &LinMap {
        &self.alpha
    }

    pub fn beta(&self) -> &LinMap {
        &self.beta
    }
}

/// Matched pair plus phi : A -> H (x) A and psi : H -> H (x) A, checked to be
/// a left H-comodule algebra and a right A-comodule algebra.
#[derive(Debug, Clone)]
pub struct BicrossData {
    mp: MatchedPairData,
    phi: LinMap,
    psi: LinMap,
}

impl BicrossData {
    pub fn new(mp: MatchedPairData, phi: LinMap, psi: LinMap) -> Result<BicrossData> {
        let (a, h) = (&mp.a, &mp.h);
        let (na, nh) = (a.dim(), h.dim());
        if phi.rows() != nh * na || phi.cols() != na {
            return Err(Error::Dimension(format!("phi must be {}x{na}", nh * na)));
        }
        if psi.rows() != nh * na || psi.cols() != nh {
            return Err(Error::Dimension(format!("psi must be {}x{nh}", nh * na)));
        }
        let f = a.field();
        let ia = LinMap::identity(f, na);
        let ih = LinMap::identity(f, nh);
        let ua = LinMap::vector(a.unit(), f);
        let uh = LinMap::vector(h.unit(), f);
        let ea = LinMap::covector(a.counit(), f);
        let eh = LinMap::covector(h.counit(), f);
        let cah = braiding_between(a, h)?;

        require_identity(
            "phi coassociativity",
            &eval_chain(&[vec![&phi], vec![h.comult(), &ia]])?,
            &eval_chain(&[vec![&phi], vec![&ih, &phi]])?,
        )?;
        require_identity("phi counit", &eval_chain(&[vec![&phi], vec![&eh, &ia]])?, &ia)?;
        require_identity(
            "phi multiplicativity",
            &phi.compose(a.mult())?,
            &eval_chain(&[vec![&phi, &phi], vec![&ih, &cah, &ia], vec![h.mult(), a.mult()]])?,
        )?;
        require_identity("phi unit", &phi.compose(&ua)?, &LinMap::kron(&[&uh, &ua]))?;

        require_identity(
            "psi coassociativity",
            &eval_chain(&[vec![&psi], vec![&psi, &ia]])?,
            &eval_chain(&[vec![&psi], vec![&ih, a.comult()]])?,
        )?;
        require_identity("psi counit", &eval_chain(&[vec![&psi], vec![&ih, &ea]])?, &ih)?;
        require_identity(
            "psi multiplicativity",
            &psi.compose(h.mult())?,
            &eval_chain(&[vec![&psi, &psi], vec![&ih, &cah, &ia], vec![h.mult(), a.mult()]])?,
        )?;
        require_identity("psi unit", &psi.compose(&uh)?, &LinMap::kron(&[&uh, &ua]))?;
        Ok(BicrossData { mp, phi, psi })
    }

    /// phi(a) = 1 (x) a and psi(h) = h (x) 1.
    pub fn trivial_coactions(mp: MatchedPairData) -> Result<BicrossData> {
        let f = mp.a.field();
        let phi = LinMap::kron(&[&LinMap::vector(mp.h.unit(), f), &LinMap::identity(f, mp.a.dim())]);
        let psi = LinMap::kron(&[&LinMap::identity(f, mp.h.dim()), &LinMap::vector(mp.a.unit(), f)]);
        BicrossData::new(mp, phi, psi)
    }

    pub fn matched_pair(&self) -> &MatchedPairData {
        &self.mp
    }

    pub fn phi(&self) -> &LinMap {
        &self.phi
    }

    pub fn psi(&self) -> &LinMap {
        &self.psi
    }
}

fn product_yd(a: &Hopf, h: &Hopf) -> Result<Option<YdData>> {
    Ok(match (a.yd(), h.yd()) {
        (None, None) => None,
        (Some(x), None) => Some(x.tensor(&h.yd_or_trivial(x.group()))?),
        (None, Some(y)) => Some(a.yd_or_trivial(y.group()).tensor(y)?),
        (Some(x), Some(y)) => Some(x.tensor(y)?),
    })
}

fn product_names(a: &Hopf, h: &Hopf) -> Vec<String> {
    a.basis()
        .iter()
        .flat_map(|x| h.basis().iter().map(move |y| format!("{x}⊗{y}")))
        .collect()
}

fn kron_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().flat_map(|p| y.iter().map(move |q| p * q)).collect()
}

/// A bowtie H from a matched pair (trivial coactions), computed term by term:
/// (a (x) h)(a' (x) h') = a alpha(h_1 (x) h_2(-1).a'_1) (x) beta(h_2(0) (x) a'_2) h'.
pub fn double_cross_product(mp: &MatchedPairData) -> Result<Hopf> {
    let (a, h) = (&mp.a, &mp.h);
    let f = a.field();
    let (na, nh) = (a.dim(), h.dim());
    let n = na * nh;
    let cha = braiding_between(h, a)?;
    let cah = braiding_between(a, h)?;
    let mut mult = Vec::with_capacity(n * n);
    for left in 0..n {
        let (ai, hi) = (left / nh, left % nh);
        for right in 0..n {
            let (aj, hj) = (right / nh, right % nh);
            let mut acc = Accumulator::new();
            for (h12, x) in h.comult().column(hi).iter() {
                let (h1, h2) = (h12 / nh, h12 % nh);
                for (a12, y) in a.comult().column(aj).iter() {
                    let (a1, a2) = (a12 / na, a12 % na);
                    // C_{H,A}(h2 (x) a1) = sum (a'' (x) h'')
                    for (ah, z) in cha.column(h2 * na + a1).iter() {
                        let (a_b, h_b) = (ah / nh, ah % nh);
                        let coeff = &(x * y) * z;
                        let left_a = alpha_apply(mp, h1, a_b);
                        let right_h = beta_apply(mp, h_b, a2);
                        let prod_a = a.mul_sparse(&SparseVec::unit(ai, f), &left_a);
                        let prod_h = h.mul_sparse(&right_h, &SparseVec::unit(hj, f));
                        for (p, u) in prod_a.iter() {
                            for (q, v) in prod_h.iter() {
                                acc.add(p * nh + q, &(&coeff * &(u * v)));
                            }
                        }
                    }
                }
            }
            mult.push(acc.finish());
        }
    }
    let mut comult = Vec::with_capacity(n);
    for k in 0..n {
        let (ak, hk) = (k / nh, k % nh);
        let mut acc = Accumulator::new();
        for (a12, x) in a.comult().column(ak).iter() {
            let (a1, a2) = (a12 / na, a12 % na);
            for (h12, y) in h.comult().column(hk).iter() {
                let (h1, h2) = (h12 / nh, h12 % nh);
                for (ha, z) in cah.column(a2 * nh + h1).iter() {
                    let (hb, ab) = (ha / na, ha % na);
                    let left = a1 * nh + hb;
                    let right = ab * nh + h2;
                    acc.add(left * n + right, &(&(x * y) * z));
                }
            }
        }
        comult.push(acc.finish());
    }
    Hopf::new(HopfData {
        field: f,
        basis: product_names(a, h),
        mult: LinMap::new(f, n, mult)?,
        unit: kron_vec(a.unit(), h.unit()),
        comult: LinMap::new(f, n * n, comult)?,
        counit: kron_vec(a.counit(), h.counit()),
        antipode: None,
        yd: product_yd(a, h)?,
    })
}

fn alpha_apply(mp: &MatchedPairData, h: usize, a: usize) -> SparseVec {
    mp.alpha.column(h * mp.a.dim() + a).clone()
}

fn beta_apply(mp: &MatchedPairData, h: usize, a: usize) -> SparseVec {
    mp.beta.column(h * mp.a.dim() + a).clone()
}

/// The double bicrossproduct, evaluated as the composites of structure maps.
pub fn double_bicrossproduct(bd: &BicrossData) -> Result<Hopf> {
    let mp = &bd.mp;
    let (a, h) = (&mp.a, &mp.h);
    let f = a.field();
    let (na, nh) = (a.dim(), h.dim());
    let ia = LinMap::identity(f, na);
    let ih = LinMap::identity(f, nh);
    let cha = braiding_between(h, a)?;
    let cah = braiding_between(a, h)?;
    let mult = eval_chain(&[
        vec![&ia, h.comult(), a.comult(), &ih],
        vec![&ia, &ih, &cha, &ia, &ih],
        vec![&ia, &mp.alpha, &mp.beta, &ih],
        vec![a.mult(), h.mult()],
    ])?;
    let comult = eval_chain(&[
        vec![a.comult(), h.comult()],
        vec![&ia, &bd.phi, &bd.psi, &ih],
        vec![&ia, &ih, &cah, &ia, &ih],
        vec![&ia, h.mult(), a.mult(), &ih],
    ])?;
    Hopf::new(HopfData {
        field: f,
        basis: product_names(a, h),
        mult,
        unit: kron_vec(a.unit(), h.unit()),
        comult,
        counit: kron_vec(a.counit(), h.counit()),
        antipode: None,
        yd: product_yd(a, h)?,
    })
}

/// Radford biproduct R # k Gamma of a braided Hopf algebra over Gamma:
/// (r#g)(s#h) = r(g.s) # gh, Delta(r#g) = sum (r' # deg(r'')g) (x) (r'' # g).
pub fn biproduct(r: &Hopf) -> Result<Hopf> {
    let yd = r
        .yd()
        .ok_or_else(|| Error::YetterDrinfeld("the biproduct needs a Yetter-Drinfeld context".into()))?;
    let f = r.field();
    let group = yd.group();
    let elems = group.elements();
    let ng = elems.len();
    let nr = r.dim();
    let n = nr * ng;
    let actions: Vec<LinMap> = elems.iter().map(|g| LinMap::from_matrix(&yd.action_of(g, f))).collect();
    let mut mult = Vec::with_capacity(n * n);
    for left in 0..n {
        let (ri, gi) = (left / ng, left % ng);
        for right in 0..n {
            let (sj, hj) = (right / ng, right % ng);
            let gs = actions[gi].column(sj);
            let prod = r.mul_sparse(&SparseVec::unit(ri, f), gs);
            let gh = group.index_of(&group.mul(&elems[gi], &elems[hj]));
            mult.push(SparseVec::from_terms(prod.iter().map(|(t, x)| (t * ng + gh, x.clone()))));
        }
    }
    let mut comult = Vec::with_capacity(n);
    for k in 0..n {
        let (rk, gk) = (k / ng, k % ng);
        let terms = r.comult().column(rk).iter().map(|(ij, x)| {
            let (i, j) = (ij / nr, ij % nr);
            let g1 = group.index_of(&group.mul(yd.degree(j), &elems[gk]));
            ((i * ng + g1) * n + (j * ng + gk), x.clone())
        });
        comult.push(SparseVec::from_terms(terms.collect::<Vec<_>>()));
    }
    let mut basis = Vec::with_capacity(n);
    for rname in r.basis() {
        for g in &elems {
            basis.push(format!("{rname}#{}", abelian_name(group, g)));
        }
    }
    let mut counit = Vec::with_capacity(n);
    for x in r.counit() {
        counit.extend(std::iter::repeat_n(x.clone(), ng));
    }
    Hopf::new(HopfData {
        field: f,
        basis,
        mult: LinMap::new(f, n, mult)?,
        unit: kron_vec(r.unit(), &unit_vec(f, ng, 0)),
        comult: LinMap::new(f, n * n, comult)?,
        counit,
        antipode: None,
        yd: None,
    })
}

/// Matched pair (k^G, kG) with alpha(g (x) delta_b) = delta_{gbg^-1} and trivial beta.
pub fn drinfeld_double_pair(g: &FiniteGroup, field: Field) -> Result<MatchedPairData> {
    let a = dual_group_algebra(g, field)?;
    let h = group_algebra(g, field)?;
    let n = g.order();
    let alpha = (0..n * n)
        .map(|gb| {
            let (x, b) = (gb / n, gb % n);
            SparseVec::unit(g.mul(g.mul(x, b), g.inv(x)), field)
        })
        .collect();
    let beta = (0..n * n)
        .map(|gb| {
            let (x, b) = (gb / n, gb % n);
            if b == 0 {
                SparseVec::unit(x, field)
            } else {
                SparseVec::new()
            }
        })
        .collect();
    MatchedPairData::new(a, h, LinMap::new(field, n, alpha)?, LinMap::new(field, n, beta)?)
}

/// Drinfeld double D(G) = k^G bowtie kG; basis delta_a (x) g at index a*|G| + g.
pub fn drinfeld_double(g: &FiniteGroup, field: Field) -> Result<Hopf> {
    double_cross_product(&drinfeld_double_pair(g, field)?)
}
