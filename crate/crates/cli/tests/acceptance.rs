//! Acceptance suite. Runs without the libtest harness so that one line per
//! criterion is always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;

use hopfkit::constructions::*;
use hopfkit::factorization::{check_inner_double_factorization, reconstruct, search_factorizations, BracketTree, SearchVerdict};
use hopfkit::hopf::{check_axioms, subalgebra_generate, tensor_hopf, SubHopf};
use hopfkit::invariants::*;
use hopfkit::linalg::Matrix;
use hopfkit::yd::{is_braided_commutative, Character, FiniteAbelianGroup};
use hopfkit::{Field, Hopf, Scalar};
use hopfkit_cli::format::AlgebraFile;
use hopfkit_cli::report::{self, envelope, render, InputDigest};

struct Instance {
    name: String,
    h: Hopf,
}

fn inst(name: impl Into<String>, h: Hopf) -> Instance {
    Instance { name: name.into(), h }
}

struct Qls {
    name: &'static str,
    group: FiniteAbelianGroup,
    h: Hopf,
    orders: Vec<u32>,
}

/// The quantum linear spaces with orders (2), (3), (2,3), (2,2,2).
fn qls_family() -> Vec<Qls> {
    let make = |name, n: u32, g: Vec<u32>, chi: Vec<u32>, field: Field| {
        let group = FiniteAbelianGroup::cyclic(n);
        let chars = chi.iter().map(|&c| Character::new(&group, vec![c]).unwrap()).collect();
        let d = QlsDatum::new(group.clone(), g.iter().map(|&x| vec![x]).collect(), chars).unwrap();
        let orders = d.orders().to_vec();
        Qls {
            name,
            group,
            h: quantum_linear_space(&d, field).unwrap(),
            orders,
        }
    };
    vec![
        make("qls(2)", 2, vec![1], vec![1], Field::Rationals),
        make("qls(3)", 3, vec![1], vec![1], Field::Cyclotomic(3)),
        make("qls(2,3)", 6, vec![3, 2], vec![3, 2], Field::Cyclotomic(6)),
        make("qls(2,2,2)", 2, vec![1, 1, 1], vec![1, 1, 1], Field::Rationals),
    ]
}

fn generators(h: &Hopf, theta: usize) -> Vec<SubHopf> {
    (1..=theta)
        .map(|i| {
            let name = if theta == 1 { "x".to_string() } else { format!("x{i}") };
            let x = h.basis_vector(h.index_of(&name).unwrap());
            subalgebra_generate(h, &[x]).unwrap()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    let Some(p) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Scalar::is_zero);
    };
    if b[p].is_zero() {
        return false;
    }
    let r = &b[p] * &a[p].inv().unwrap();
    a.iter().zip(b).all(|(x, y)| &(x * &r) == y)
}

fn drinfeld_factors(d: &Hopf, n: usize) -> (SubHopf, SubHopf) {
    let f = d.field();
    let a_cols: Vec<_> = (0..n).map(|a| d.basis_vector(a * n)).collect();
    let h_cols: Vec<_> = (0..n)
        .map(|g| {
            let mut v = vec![f.zero(); n * n];
            for a in 0..n {
                v[a * n + g] = f.one();
            }
            v
        })
        .collect();
    (
        SubHopf::new(d, Matrix::from_columns(f, n * n, &a_cols).unwrap()).unwrap(),
        SubHopf::new(d, Matrix::from_columns(f, n * n, &h_cols).unwrap()).unwrap(),
    )
}

/// Entry-wise check that `iso` intertwines the products, coproducts, units and counits.
fn isomorphism_entrywise(iso: &Matrix, src: &Hopf, dst: &Hopf) -> bool {
    let n = src.dim();
    let f = src.field();
    if iso.rank() != n || dst.dim() != n {
        return false;
    }
    let cols = iso.columns();
    let pair = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![f.zero(); n * n];
        for (ab, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (ab / n, ab % n);
            for (i, x) in cols[a].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in cols[b].iter().enumerate() {
                    if !y.is_zero() {
                        out[i * n + j] = &out[i * n + j] + &(&(c * x) * y);
                    }
                }
            }
        }
        out
    };
    for i in 0..n {
        let ei = src.basis_vector(i);
        for j in 0..n {
            let lhs = iso.apply(&src.multiply(&ei, &src.basis_vector(j)));
            if lhs != dst.multiply(&cols[i], &cols[j]) {
                return false;
            }
        }
        if pair(&src.coproduct(&ei)) != dst.coproduct(&cols[i]) {
            return false;
        }
        if src.apply_counit(&ei) != dst.apply_counit(&cols[i]) {
            return false;
        }
    }
    iso.apply(src.unit()) == dst.unit()
}

fn ordinary_instances() -> Vec<Instance> {
    let q = Field::Rationals;
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(inst(format!("kZ{n}"), group_algebra(&FiniteGroup::cyclic(n), q).unwrap()));
    }
    let s3 = FiniteGroup::symmetric(3);
    out.push(inst("k^S3", dual_group_algebra(&s3, q).unwrap()));
    out.push(inst("kS3", group_algebra(&s3, q).unwrap()));
    out.push(inst("H4", sweedler_h4(q).unwrap()));
    let z3 = Field::Cyclotomic(3);
    out.push(inst("Taft(3)", taft(3, &z3.zeta().unwrap()).unwrap()));
    out.push(inst("D(S3)", drinfeld_double(&s3, q).unwrap()));
    out
}

/// Trivial tensor products over Q of at most 36 dimensions, built both directly
/// and as double cross products with trivial actions.
fn tensor_instances() -> Vec<(String, Hopf, Hopf, Hopf)> {
    let q = Field::Rationals;
    let s3 = FiniteGroup::symmetric(3);
    let pieces = vec![
        ("kZ2", group_algebra(&FiniteGroup::cyclic(2), q).unwrap()),
        ("kZ3", group_algebra(&FiniteGroup::cyclic(3), q).unwrap()),
        ("H4", sweedler_h4(q).unwrap()),
        ("kS3", group_algebra(&s3, q).unwrap()),
        ("k^S3", dual_group_algebra(&s3, q).unwrap()),
    ];
    let mut out = Vec::new();
    for (na, a) in &pieces {
        for (nb, b) in &pieces {
            if a.dim() * b.dim() > 36 {
                continue;
            }
            out.push((format!("{na}(x){nb}"), tensor_hopf(a, b).unwrap(), a.clone(), b.clone()));
            let mp = MatchedPairData::trivial(a.clone(), b.clone()).unwrap();
            out.push((format!("{na}><{nb}"), double_cross_product(&mp).unwrap(), a.clone(), b.clone()));
        }
    }
    out
}

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut count = 0;
    let mut check = |name: &str, h: &Hopf| -> Result<(), String> {
        let r = check_axioms(h.data()).map_err(|e| format!("{name}: {e}"))?;
        count += 1;
        ensure(r.passed(), || format!("{name}: {:?}", r.first_failure()))
    };
    for i in ordinary_instances() {
        check(&i.name, &i.h)?;
    }
    for l in qls_family() {
        check(l.name, &l.h)?;
        check(&format!("{} biproduct", l.name), &biproduct(&l.h).unwrap())?;
    }
    for (name, t, _, _) in tensor_instances() {
        check(&name, &t)?;
    }
    Ok(format!("{count} instances, zero residual entries"))
}

fn criterion_2() -> Outcome {
    let mut checks = 0;
    for l in qls_family() {
        let expected: u32 = l.orders.iter().product();
        ensure(l.h.dim() == expected as usize, || format!("{}: dim {} != {expected}", l.name, l.h.dim()))?;
        let gens = generators(&l.h, l.orders.len());
        for p in permutations(gens.len()) {
            let subs: Vec<_> = p.iter().map(|&i| gens[i].clone()).collect();
            for sigma in BracketTree::all(subs.len().max(1)) {
                if subs.len() < 2 {
                    continue;
                }
                let v = check_inner_double_factorization(&l.h, &subs, &sigma).map_err(|e| format!("{}: {e}", l.name))?;
                ensure(v.passed(), || format!("{} {p:?} {sigma}: {v:?}", l.name))?;
                checks += 1;
            }
        }
    }
    Ok(format!("dimension law on 4 data, {checks} (bracketing, order) pairs pass"))
}

fn criterion_3() -> Outcome {
    let mut done = Vec::new();
    for l in qls_family().into_iter().filter(|l| l.orders.len() >= 2) {
        let subs = generators(&l.h, l.orders.len());
        for sigma in BracketTree::all(subs.len()) {
            let c = reconstruct(&l.h, &subs, &sigma).map_err(|e| format!("{} {sigma}: {e}", l.name))?;
            ensure(c.nodes.len() == subs.len() - 1, || format!("{}: node count", l.name))?;
            ensure(isomorphism_entrywise(&c.isomorphism, &c.rebuilt, &l.h), || {
                format!("{} {sigma}: isomorphism fails entry-wise", l.name)
            })?;
        }
        done.push(l.name);
    }
    let d = drinfeld_double(&FiniteGroup::symmetric(3), Field::Rationals).unwrap();
    let (a, h) = drinfeld_factors(&d, 6);
    let c = reconstruct(&d, &[a, h], &BracketTree::left_comb(2)).map_err(|e| format!("D(S3): {e}"))?;
    ensure(isomorphism_entrywise(&c.isomorphism, &c.rebuilt, &d), || "D(S3): isomorphism".into())?;
    done.push("D(S3)");
    Ok(format!("certificates verified entry-wise for {}", done.join(", ")))
}

fn criterion_4() -> Outcome {
    let z = Field::Cyclotomic(3);
    for (name, h) in [
        ("H4", sweedler_h4(Field::Rationals).unwrap()),
        ("Taft(3)", taft(3, &z.zeta().unwrap()).unwrap()),
    ] {
        let r = search_factorizations(&h, &[]).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.verdict == SearchVerdict::Infactorisable, || format!("{name}: {}", r.verdict))?;
        ensure(r.lattice_complete && r.grouplikes_complete, || format!("{name}: lattice incomplete"))?;
        ensure(r.factorizations.is_empty(), || format!("{name}: factorization listed"))?;
    }
    Ok("H4 and Taft(3) infactorisable, lattice complete".into())
}

fn criterion_5() -> Outcome {
    let q = Field::Rationals;
    let h4 = sweedler_h4(q).unwrap();
    let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
    let l = integrals(&h4, Side::Left);
    let r = integrals(&h4, Side::Right);
    ensure(l.dim == 1 && r.dim == 1, || "H4 integral dims".into())?;
    ensure(proportional(l.integral().unwrap(), &v(&[0, 1, 0, 1])), || "H4 left".into())?;
    ensure(proportional(r.integral().unwrap(), &v(&[0, 1, 0, -1])), || "H4 right".into())?;
    for qls in qls_family() {
        let top = qls.h.basis_vector(qls.h.dim() - 1);
        for side in [Side::Left, Side::Right] {
            let i = integrals(&qls.h, side);
            ensure(i.dim == 1, || format!("{} {side}: dim {}", qls.name, i.dim))?;
            ensure(proportional(i.integral().unwrap(), &top), || format!("{} {side}", qls.name))?;
        }
        // biproduct basis r#g has index r * |G| + g
        let bp = biproduct(&qls.h).unwrap();
        let order = qls.group.order();
        let f = bp.field();
        let mut expect = vec![f.zero(); bp.dim()];
        for g in 0..order {
            expect[(qls.h.dim() - 1) * order + g] = f.one();
        }
        let right = integrals(&bp, Side::Right);
        let left = integrals(&bp, Side::Left);
        ensure(right.dim == 1 && left.dim == 1, || format!("{} biproduct dims", qls.name))?;
        ensure(proportional(right.integral().unwrap(), &expect), || format!("{} biproduct right", qls.name))?;
    }
    Ok("H4, QLS top monomials, biproducts (right side) all one-dimensional".into())
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for (name, t, a, b) in tensor_instances() {
        let w = integral_factor_check(&t, &a, &b).map_err(|e| format!("{name}: {e}"))?;
        ensure(w.found(), || format!("{name}: no witnesses"))?;
        count += 1;
    }
    for l in qls_family() {
        let bp = biproduct(&l.h).unwrap();
        let kg = group_algebra(&FiniteGroup::abelian(&l.group), l.h.field()).unwrap();
        let w = integral_factor_check(&bp, &l.h, &kg).map_err(|e| format!("{}: {e}", l.name))?;
        ensure(w.found(), || format!("{} biproduct: no witnesses", l.name))?;
        count += 1;
    }
    let q = Field::Rationals;
    let s3 = FiniteGroup::symmetric(3);
    let d = drinfeld_double(&s3, q).unwrap();
    let w = integral_factor_check(&d, &dual_group_algebra(&s3, q).unwrap(), &group_algebra(&s3, q).unwrap())
        .map_err(|e| format!("D(S3): {e}"))?;
    ensure(w.found() && w.unimodular, || "D(S3) witnesses".into())?;
    ensure(w.product_form == Some(true), || "D(S3) integral is not a product".into())?;
    count += 1;
    Ok(format!("witnesses found for {count} products; D(S3) integral is a product of factor integrals"))
}

fn criterion_7() -> Outcome {
    let mut instances = ordinary_instances();
    let mut certified = 0;
    for (name, t, a, b) in tensor_instances() {
        let lhs = trace_s_squared(&t);
        let rhs = &trace_s_squared(&a) * &trace_s_squared(&b);
        ensure(lhs == rhs, || format!("{name}: tr(S^2) {lhs} != {rhs}"))?;
        certified += 1;
        instances.push(inst(name, t));
    }
    let q = Field::Rationals;
    let s3 = FiniteGroup::symmetric(3);
    let d = drinfeld_double(&s3, q).unwrap();
    let (a, h) = drinfeld_factors(&d, 6);
    let r = classify(&d, Some((&[a, h], &BracketTree::left_comb(2)))).map_err(|e| format!("D(S3): {e}"))?;
    ensure(r.consistent(), || format!("D(S3) factors: {:?}", r.falsified()))?;
    certified += 1;
    for i in instances.iter().filter(|i| i.h.field().characteristic() == 0) {
        let r = classify(&i.h, None).map_err(|e| format!("{}: {e}", i.name))?;
        ensure(r.consistent(), || format!("{}: {:?}", i.name, r.falsified()))?;
        let six = [
            r.semisimple,
            r.cosemisimple,
            r.trace_s2 != i.h.field().zero(),
            r.involutory,
            maschke_semisimple(&i.h),
            cosemisimple(&i.h).unwrap(),
        ];
        ensure(six.iter().all(|&b| b == six[0]), || format!("{}: {six:?}", i.name))?;
        let oracle = semisimplicity_oracle(&i.h).map_err(|e| format!("{}: {e}", i.name))?;
        ensure(oracle == maschke_semisimple(&i.h), || format!("{}: Maschke vs trace form", i.name))?;
    }
    let radford: Vec<(String, Hopf)> = (1..=6)
        .map(|n| (format!("kZ{n}"), group_algebra(&FiniteGroup::cyclic(n), q).unwrap()))
        .chain([
            ("H4".to_string(), sweedler_h4(q).unwrap()),
            ("k^S3".to_string(), dual_group_algebra(&s3, q).unwrap()),
            ("D(S3)".to_string(), d),
        ])
        .collect();
    for (name, h) in &radford {
        let r = radford_identity_check(h).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.holds(), || format!("{name}: {} != {}", r.lhs, r.rhs))?;
    }
    Ok(format!(
        "{} char-0 instances consistent, {certified} certified products multiplicative, Radford on {}",
        instances.len(),
        radford.len()
    ))
}

fn criterion_8() -> Outcome {
    for (n, p) in [(2u32, 5u64), (2, 37), (6, 37)] {
        let f = Field::prime(p).unwrap();
        let h = group_algebra(&FiniteGroup::cyclic(n), f).unwrap();
        let r = classify(&h, None).map_err(|e| e.to_string())?;
        ensure(r.char_regime == CharRegime::PLarge, || format!("kZ{n} over F{p}: {}", r.char_regime))?;
        ensure(r.involutory && r.trace_s2 == f.from_i64(n as i64) && !r.trace_s2.is_zero(), || {
            format!("kZ{n} over F{p}: tr(S^2) = {}", r.trace_s2)
        })?;
        ensure(r.semisimple && r.consistent(), || format!("kZ{n} over F{p}: {:?}", r.falsified()))?;
    }
    let f3 = Field::prime(3).unwrap();
    let h = group_algebra(&FiniteGroup::cyclic(3), f3).unwrap();
    let r = classify(&h, None).map_err(|e| e.to_string())?;
    ensure(r.char_regime == CharRegime::PSmall, || "kZ3 over F3 regime".into())?;
    ensure(!maschke_semisimple(&h) && !r.semisimple, || "kZ3 over F3 is semisimple".into())?;
    ensure(r.trace_s2.is_zero(), || "kZ3 over F3 trace".into())?;
    Ok("kZ2 over F5, F37 and kZ6 over F37 have tr(S^2) = dim; kZ3 over F3 not semisimple".into())
}

fn criterion_9() -> Outcome {
    let line = |n: u32, f: Field| {
        let g = FiniteAbelianGroup::cyclic(n);
        let chi = Character::new(&g, vec![1]).unwrap();
        quantum_linear_space(&QlsDatum::new(g, vec![vec![1]], vec![chi]).unwrap(), f).unwrap()
    };
    let h3 = line(3, Field::Cyclotomic(3));
    ensure(check_axioms(h3.data()).unwrap().passed(), || "N=3 axioms".into())?;
    ensure(h3.dim() == 3, || "N=3 dimension".into())?;
    ensure(!is_braided_commutative(&h3), || "N=3 is braided commutative".into())?;
    let h2 = line(2, Field::Rationals);
    ensure(is_braided_commutative(&h2), || "N=2 is not braided commutative".into())?;
    Ok("N=3 line: dim 3, braided noncommutative; N=2 line braided commutative".into())
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfkit")).args(args).output().expect("binary runs");
    out.stdout
}

fn report_suite() -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let f = |n: &str| dir.join(n).to_string_lossy().into_owned();
    let mut out = vec![
        run_cli(&["check", &f("h4.json")]),
        run_cli(&["check", &f("z2_bad_antipode.json")]),
        run_cli(&["integrals", &f("qls_z3.json")]),
        run_cli(&["factor", &f("qls_z3.json"), "--sub", "gen:x1", "--sub", "gen:x2"]),
        run_cli(&["search-factor", &f("h4.json")]),
        run_cli(&["classify", &f("z6.json"), "--sub", "gen:g^3", "--sub", "gen:g^2"]),
    ];
    let d = drinfeld_double(&FiniteGroup::symmetric(3), Field::Rationals).unwrap();
    let r = classify(&d, None).unwrap();
    let digest = InputDigest::new("D(S3)", &AlgebraFile::from_hopf(&d).to_json());
    out.push(render(&envelope("classify", &[digest], "consistent", report::classification(&r))).into_bytes());
    out
}

fn criterion_10() -> Outcome {
    let mut all = ordinary_instances();
    all.extend(qls_family().into_iter().map(|l| inst(l.name, l.h)));
    for i in &all {
        let text = AlgebraFile::from_hopf(&i.h).to_json();
        let file = AlgebraFile::parse(&text).map_err(|e| format!("{}: {e}", i.name))?;
        let data = file.to_data().map_err(|e| format!("{}: {e}", i.name))?;
        let h = &i.h;
        ensure(
            data.mult == *h.mult() && data.comult == *h.comult() && data.antipode.as_ref() == Some(h.antipode()),
            || format!("{}: structure maps differ after round trip", i.name),
        )?;
        ensure(data.unit == h.unit() && data.counit == h.counit() && data.basis == h.basis(), || {
            format!("{}: unit, counit or basis differ", i.name)
        })?;
        ensure(data.yd == h.yd().cloned(), || format!("{}: braiding data differs", i.name))?;
        let again = AlgebraFile::from_hopf(&Hopf::new(data).unwrap()).to_json();
        ensure(again == text, || format!("{}: serialization not stable", i.name))?;
    }
    let first = report_suite();
    let second = report_suite();
    ensure(first.iter().all(|r| !r.is_empty()), || "empty report".into())?;
    ensure(first == second, || "reports differ between runs".into())?;
    Ok(format!("{} round trips identical, {} reports byte-identical across runs", all.len(), first.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "axiom gauntlet", criterion_1),
        (2, "quantum linear space factorizations", criterion_2),
        (3, "reconstruction certificates", criterion_3),
        (4, "infactorisability", criterion_4),
        (5, "integrals", criterion_5),
        (6, "integral witnesses", criterion_6),
        (7, "characteristic zero consistency", criterion_7),
        (8, "positive characteristic regimes", criterion_8),
        (9, "braided quantum line", criterion_9),
        (10, "determinism and round trip", criterion_10),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    std::panic::set_hook(Box::new(|_| {}));
    for (n, title, run) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n} ({title}): PASS [tolerance: exact] {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} ({title}): FAIL [tolerance: exact] {detail} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
