//! Inner double factorizations: bracketings, node-by-node verdicts,
//! matched-pair extraction, reconstruction of the iterated double cross
//! product, and a search over a lattice of generated sub-Hopf algebras.

use std::fmt;

use crate::constructions::{double_cross_product, MatchedPairData};
use crate::error::{Error, Result};
use crate::hopf::{grouplike_candidates, morphism_check, skew_primitives, subalgebra_generate, Hopf, MorphismVerdict, SubHopf};
use crate::linalg::{solve_linear, LinMap, Matrix, RowReducer, Solution, SparseVec};
use crate::scalars::Scalar;

/// Full binary tree over the leaves 1..n, e.g. "((1 2) 3)".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(usize),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn parse(text: &str) -> Result<BracketTree> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let tree = parse_tree(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input in bracketing {text:?}")));
        }
        tree.validate()?;
        Ok(tree)
    }

    fn validate(&self) -> Result<()> {
        let leaves = self.leaves();
        if leaves.len() < 2 {
            return Err(Error::Parse("a bracketing needs at least two factors".into()));
        }
        if leaves != (1..=leaves.len()).collect::<Vec<_>>() {
            return Err(Error::Parse(format!(
                "leaves must be 1..{} in order, found {leaves:?}",
                leaves.len()
            )));
        }
        Ok(())
    }

    /// ((1 2) 3) ... for n leaves.
    pub fn left_comb(n: usize) -> BracketTree {
        let mut t = BracketTree::Leaf(1);
        for i in 2..=n {
            t = BracketTree::Node(Box::new(t), Box::new(BracketTree::Leaf(i)));
        }
        t
    }

    /// Every bracketing of the leaves first..=last.
    pub fn all(n: usize) -> Vec<BracketTree> {
        all_between(1, n)
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            BracketTree::Leaf(i) => vec![*i],
            BracketTree::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    pub fn len(&self) -> usize {
        self.leaves().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Internal nodes, children before parents.
    pub fn internal_nodes(&self) -> Vec<&BracketTree> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a BracketTree, out: &mut Vec<&'a BracketTree>) {
            if let BracketTree::Node(l, r) = t {
                walk(l, out);
                walk(r, out);
                out.push(t);
            }
        }
        walk(self, &mut out);
        out
    }
}

fn all_between(first: usize, last: usize) -> Vec<BracketTree> {
    if first == last {
        return vec![BracketTree::Leaf(first)];
    }
    let mut out = Vec::new();
    for split in first..last {
        for l in all_between(first, split) {
            for r in all_between(split + 1, last) {
                out.push(BracketTree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(i) => write!(f, "{i}"),
            BracketTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Index(usize),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                out.push(Token::Open);
                chars.next();
            }
            ')' => {
                out.push(Token::Close);
                chars.next();
            }
            c if c.is_whitespace() || c == ',' => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Index(s.parse().map_err(|_| Error::Parse(format!("bad index {s}")))?));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in bracketing"))),
        }
    }
    Ok(out)
}

fn parse_tree(tokens: &[Token], pos: &mut usize) -> Result<BracketTree> {
    match tokens.get(*pos) {
        Some(Token::Index(i)) => {
            *pos += 1;
            Ok(BracketTree::Leaf(*i))
        }
        Some(Token::Open) => {
            *pos += 1;
            let l = parse_tree(tokens, pos)?;
            let r = parse_tree(tokens, pos)?;
            if tokens.get(*pos) != Some(&Token::Close) {
                return Err(Error::Parse("expected ')' after two subtrees".into()));
            }
            *pos += 1;
            Ok(BracketTree::Node(Box::new(l), Box::new(r)))
        }
        Some(Token::Close) => Err(Error::Parse("unexpected ')'".into())),
        None => Err(Error::Parse("unexpected end of bracketing".into())),
    }
}

fn same_parent(a: &SubHopf, b: &SubHopf) -> Result<()> {
    if a.parent() != b.parent() {
        return Err(Error::Structural("subspaces have different parents".into()));
    }
    Ok(())
}

/// Span of all products of basis vectors of A and B.
pub fn subspace_product(a: &SubHopf, b: &SubHopf) -> Result<SubHopf> {
    same_parent(a, b)?;
    let h = a.parent();
    let n = h.dim();
    let f = h.field();
    let mut reducer = RowReducer::new(f, n, 0);
    let mut cols = Vec::new();
    for i in 0..a.dim() {
        let x = SparseVec::from_dense(&a.basis().column(i));
        for j in 0..b.dim() {
            let y = SparseVec::from_dense(&b.basis().column(j));
            let p = h.mul_sparse(&x, &y);
            if !p.is_empty() && reducer.push(p.clone()) {
                cols.push(p.to_dense(n, f));
            }
        }
    }
    if cols.is_empty() {
        return Err(Error::Structural("product of the subspaces is zero".into()));
    }
    SubHopf::new(h, Matrix::from_columns(f, n, &cols)?)
}

/// Do AB and BA have the same column space?
pub fn commutation_check(a: &SubHopf, b: &SubHopf) -> Result<bool> {
    Ok(subspace_product(a, b)?.same_span(&subspace_product(b, a)?))
}

/// Outcome at one bracket pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub bracket: String,
    pub left_dim: usize,
    pub right_dim: usize,
    pub product_dim: usize,
    pub sub_hopf: bool,
    pub bijective: bool,
}

impl NodeRecord {
    pub fn passed(&self) -> bool {
        self.sub_hopf && self.bijective
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationVerdict {
    pub nodes: Vec<NodeRecord>,
    /// dim H equals the product of the factor dimensions.
    pub dimension_test: bool,
}

impl FactorizationVerdict {
    pub fn passed(&self) -> bool {
        self.nodes.iter().all(NodeRecord::passed)
    }

    /// The dimension route: dimension count plus sub-Hopf products.
    pub fn dimension_route(&self) -> bool {
        self.dimension_test && self.nodes.iter().all(|n| n.sub_hopf)
    }
}

fn check_factors(h: &Hopf, subs: &[SubHopf], sigma: &BracketTree) -> Result<()> {
    if sigma.len() != subs.len() {
        return Err(Error::Structural(format!(
            "bracketing has {} leaves but {} factors were given",
            sigma.len(),
            subs.len()
        )));
    }
    for (i, s) in subs.iter().enumerate() {
        if s.parent() != h {
            return Err(Error::Structural(format!("factor {} is not a subspace of H", i + 1)));
        }
        if !s.is_sub_hopf() {
            return Err(Error::Structural(format!(
                "factor {} is not a sub-Hopf algebra: {:?}",
                i + 1,
                s.certificates()
            )));
        }
    }
    Ok(())
}

fn node_space(subs: &[SubHopf], t: &BracketTree) -> Result<SubHopf> {
    match t {
        BracketTree::Leaf(i) => Ok(subs[i - 1].clone()),
        BracketTree::Node(l, r) => subspace_product(&node_space(subs, l)?, &node_space(subs, r)?),
    }
}

/// Node-by-node test of an inner double factorization along sigma.
pub fn check_inner_double_factorization(
    h: &Hopf,
    subs: &[SubHopf],
    sigma: &BracketTree,
) -> Result<FactorizationVerdict> {
    check_factors(h, subs, sigma)?;
    let whole = node_space(subs, &BracketTree::left_comb(subs.len()))?;
    if whole.dim() != h.dim() {
        return Err(Error::Structural(format!(
            "the factors span a {}-dimensional subspace of a {}-dimensional algebra",
            whole.dim(),
            h.dim()
        )));
    }
    let mut nodes = Vec::new();
    for node in sigma.internal_nodes() {
        let BracketTree::Node(l, r) = node else { unreachable!() };
        let left = node_space(subs, l)?;
        let right = node_space(subs, r)?;
        let product = subspace_product(&left, &right)?;
        // the image of m restricted to left (x) right is the product span,
        // so the map is injective exactly when the ranks match
        nodes.push(NodeRecord {
            bracket: node.to_string(),
            left_dim: left.dim(),
            right_dim: right.dim(),
            product_dim: product.dim(),
            sub_hopf: product.is_sub_hopf(),
            bijective: product.dim() == left.dim() * right.dim(),
        });
    }
    let total: usize = subs.iter().map(SubHopf::dim).product();
    Ok(FactorizationVerdict {
        nodes,
        dimension_test: total == h.dim(),
    })
}

/// Output of matched-pair extraction.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub pair: MatchedPairData,
    pub rebuilt: Hopf,
    /// m . (j_A (x) j_B) from the rebuilt product into H.
    pub embedding: Matrix,
}

fn kron_columns(h: &Hopf, ja: &Matrix, jb: &Matrix, swap: bool) -> Vec<Vec<Scalar>> {
    let (first, second) = if swap { (jb, ja) } else { (ja, jb) };
    let mut out = Vec::with_capacity(first.cols() * second.cols());
    for i in 0..first.cols() {
        let x = SparseVec::from_dense(&first.column(i));
        for j in 0..second.cols() {
            let y = SparseVec::from_dense(&second.column(j));
            out.push(h.mul_sparse(&x, &y).to_dense(h.dim(), h.field()));
        }
    }
    out
}

/// Extract alpha, beta from Hopf maps j_A : A -> H and j_B : B -> H whose
/// multiplication map m(j_A (x) j_B) is injective with image containing
/// every product j_B(b) j_A(a).
pub fn extract_matched_pair_via(h: &Hopf, a: &Hopf, ja: &Matrix, b: &Hopf, jb: &Matrix) -> Result<Extraction> {
    let f = h.field();
    let n = h.dim();
    for (name, j, src) in [("j_A", ja, a), ("j_B", jb, b)] {
        if j.rows() != n || j.cols() != src.dim() {
            return Err(Error::Dimension(format!("{name} has the wrong shape")));
        }
        let report = morphism_check(j, src, h)?;
        if report.verdict() != MorphismVerdict::HopfMap {
            return Err(Error::Structural(format!("{name} is not a Hopf algebra map")));
        }
    }
    let (da, db) = (a.dim(), b.dim());
    let m = Matrix::from_columns(f, n, &kron_columns(h, ja, jb, false))?;
    let targets = Matrix::from_columns(f, n, &kron_columns(h, ja, jb, true))?;
    let psi = match solve_linear(&m, &targets)? {
        Solution::Inconsistent => {
            return Err(Error::Structural(
                "some product j_B(b) j_A(a) lies outside the image of m(j_A (x) j_B)".into(),
            ))
        }
        Solution::Affine { particular, kernel } => {
            if !kernel.is_empty() {
                return Err(Error::Structural(format!(
                    "multiplication map A (x) B -> H is not injective (kernel dimension {})",
                    kernel.len()
                )));
            }
            particular
        }
    };
    // psi column b*da + a holds (1 (x) b)(a (x) 1) in A (x) B coordinates
    let psi = LinMap::from_matrix(&psi);
    let ia = LinMap::identity(f, da);
    let ib = LinMap::identity(f, db);
    let ea = LinMap::covector(a.counit(), f);
    let eb = LinMap::covector(b.counit(), f);
    let alpha = LinMap::kron(&[&ia, &eb]).compose(&psi)?;
    let beta = LinMap::kron(&[&ea, &ib]).compose(&psi)?;
    let pair = MatchedPairData::new(a.clone(), b.clone(), alpha, beta)?;
    let rebuilt = double_cross_product(&pair)?;
    let report = morphism_check(&m, &rebuilt, h)?;
    if report.verdict() != MorphismVerdict::HopfMap {
        return Err(Error::Structural(format!(
            "m(j_A (x) j_B) is not a Hopf map from the rebuilt product: {report:?}"
        )));
    }
    Ok(Extraction {
        pair,
        rebuilt,
        embedding: m,
    })
}

/// Extraction for two sub-Hopf algebras with their inclusions.
pub fn extract_matched_pair(h: &Hopf, a: &SubHopf, b: &SubHopf) -> Result<Extraction> {
    same_parent(a, b)?;
    if a.parent() != h {
        return Err(Error::Structural("subspaces are not inside H".into()));
    }
    for (name, s) in [("A", a), ("B", b)] {
        if !s.is_sub_hopf() {
            return Err(Error::Structural(format!(
                "{name} is not a sub-Hopf algebra: {:?}",
                s.certificates()
            )));
        }
    }
    if a.dim() * b.dim() != h.dim() {
        return Err(Error::Structural(format!(
            "dim A * dim B = {} but dim H = {}",
            a.dim() * b.dim(),
            h.dim()
        )));
    }
    let e = extract_matched_pair_via(h, &a.to_hopf()?, a.basis(), &b.to_hopf()?, b.basis())?;
    if e.embedding.rank() != h.dim() {
        return Err(Error::Structural("multiplication map A (x) B -> H is not bijective".into()));
    }
    Ok(e)
}

/// Actions extracted at one bracket pair.
#[derive(Debug, Clone)]
pub struct NodeCertificate {
    pub bracket: String,
    pub alpha: Matrix,
    pub beta: Matrix,
}

#[derive(Debug, Clone)]
pub struct ReconstructionCertificate {
    pub nodes: Vec<NodeCertificate>,
    /// The iterated double cross product along sigma.
    pub rebuilt: Hopf,
    /// m^{n-1}(j_1 (x) ... (x) j_n), a Hopf isomorphism rebuilt -> H.
    pub isomorphism: Matrix,
}

/// Rebuild H as an iterated double cross product along sigma, innermost
/// brackets first, and certify the isomorphism.
pub fn reconstruct(h: &Hopf, subs: &[SubHopf], sigma: &BracketTree) -> Result<ReconstructionCertificate> {
    let verdict = check_inner_double_factorization(h, subs, sigma)?;
    if let Some(bad) = verdict.nodes.iter().find(|n| !n.passed()) {
        return Err(Error::Structural(format!("bracket {} fails: {bad:?}", bad.bracket)));
    }
    let mut nodes = Vec::new();
    let (rebuilt, iso) = rebuild(h, subs, sigma, &mut nodes)?;
    if iso.rank() != h.dim() {
        return Err(Error::Structural("reconstructed map is not bijective".into()));
    }
    Ok(ReconstructionCertificate {
        nodes,
        rebuilt,
        isomorphism: iso,
    })
}

fn rebuild(h: &Hopf, subs: &[SubHopf], t: &BracketTree, out: &mut Vec<NodeCertificate>) -> Result<(Hopf, Matrix)> {
    match t {
        BracketTree::Leaf(i) => {
            let s = &subs[i - 1];
            Ok((s.to_hopf()?, s.basis().clone()))
        }
        BracketTree::Node(l, r) => {
            let (dl, jl) = rebuild(h, subs, l, out)?;
            let (dr, jr) = rebuild(h, subs, r, out)?;
            let e = extract_matched_pair_via(h, &dl, &jl, &dr, &jr)
                .map_err(|err| Error::Structural(format!("bracket {t}: {err}")))?;
            out.push(NodeCertificate {
                bracket: t.to_string(),
                alpha: e.pair.alpha().to_matrix(),
                beta: e.pair.beta().to_matrix(),
            });
            Ok((e.rebuilt, e.embedding))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchVerdict {
    Factorisable,
    Infactorisable,
    /// No factorization among the enumerated sub-Hopf algebras, which may be incomplete.
    InfactorisableRelative,
}

impl fmt::Display for SearchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchVerdict::Factorisable => "factorisable",
            SearchVerdict::Infactorisable => "infactorisable",
            SearchVerdict::InfactorisableRelative => "infactorisable relative to enumerated lattice",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Sub-Hopf algebras found, including the trivial ones.
    pub lattice: Vec<SubHopf>,
    /// Index pairs (A, B) into `lattice` giving inner double factorizations.
    pub factorizations: Vec<(usize, usize)>,
    pub grouplikes: Vec<Vec<Scalar>>,
    pub grouplikes_complete: bool,
    pub lattice_complete: bool,
    pub verdict: SearchVerdict,
}

const LATTICE_LIMIT: usize = 256;

/// Enumerate sub-Hopf algebras generated by group-likes, skew-primitives
/// and the pool, close under joins, and test every pair of complementary
/// dimensions.
pub fn search_factorizations(h: &Hopf, pool: &[Vec<Scalar>]) -> Result<SearchReport> {
    let n = h.dim();
    let gl = grouplike_candidates(h, pool);
    let mut atoms: Vec<Vec<Vec<Scalar>>> = Vec::new();
    let mut skew_small = true;
    for g in &gl.elements {
        atoms.push(vec![g.clone()]);
    }
    for g in &gl.elements {
        for k in &gl.elements {
            let space = skew_primitives(h, g, k)?;
            let diff: Vec<Scalar> = g.iter().zip(k).map(|(x, y)| x - y).collect();
            let trivial: Vec<Vec<Scalar>> = if diff.iter().all(Scalar::is_zero) { vec![] } else { vec![diff] };
            let mut reducer = RowReducer::new(h.field(), n, 0);
            for t in &trivial {
                reducer.push(SparseVec::from_dense(t));
            }
            let nontrivial: Vec<Vec<Scalar>> = space
                .into_iter()
                .filter(|v| reducer.push(SparseVec::from_dense(v)))
                .collect();
            if nontrivial.len() > 1 {
                skew_small = false;
            }
            for x in &nontrivial {
                atoms.push(vec![x.clone(), g.clone(), k.clone()]);
            }
            if nontrivial.len() > 1 {
                let mut all = nontrivial.clone();
                all.push(g.clone());
                all.push(k.clone());
                atoms.push(all);
            }
        }
    }
    for v in pool {
        atoms.push(vec![v.clone()]);
    }

    let mut lattice: Vec<SubHopf> = Vec::new();
    let mut seeds: Vec<Vec<Vec<Scalar>>> = Vec::new();
    let push = |s: SubHopf, seed: Vec<Vec<Scalar>>, lattice: &mut Vec<SubHopf>, seeds: &mut Vec<Vec<Vec<Scalar>>>| {
        if s.is_sub_hopf() && !lattice.iter().any(|l| l.same_span(&s)) {
            lattice.push(s);
            seeds.push(seed);
        }
    };
    push(subalgebra_generate(h, &[])?, vec![], &mut lattice, &mut seeds);
    for atom in &atoms {
        push(subalgebra_generate(h, atom)?, atom.clone(), &mut lattice, &mut seeds);
    }
    let mut truncated = false;
    let mut i = 0;
    while i < lattice.len() {
        for j in 0..i {
            if lattice.len() >= LATTICE_LIMIT {
                truncated = true;
                break;
            }
            let mut seed = seeds[i].clone();
            seed.extend(seeds[j].iter().cloned());
            push(subalgebra_generate(h, &seed)?, seed, &mut lattice, &mut seeds);
        }
        i += 1;
    }
    let generated_all = lattice.iter().any(|l| l.dim() == n);

    let mut factorizations = Vec::new();
    for a in 0..lattice.len() {
        for b in a..lattice.len() {
            let (da, db) = (lattice[a].dim(), lattice[b].dim());
            if da == 1 || db == 1 || da * db != n {
                continue;
            }
            let pair = [lattice[a].clone(), lattice[b].clone()];
            let sigma = BracketTree::left_comb(2);
            match check_inner_double_factorization(h, &pair, &sigma) {
                Ok(v) if v.passed() => factorizations.push((a, b)),
                _ => {}
            }
        }
    }
    let lattice_complete = gl.complete && skew_small && generated_all && !truncated;
    let verdict = if !factorizations.is_empty() {
        SearchVerdict::Factorisable
    } else if lattice_complete {
        SearchVerdict::Infactorisable
    } else {
        SearchVerdict::InfactorisableRelative
    };
    Ok(SearchReport {
        lattice,
        factorizations,
        grouplikes: gl.elements,
        grouplikes_complete: gl.complete,
        lattice_complete,
        verdict,
    })
}
