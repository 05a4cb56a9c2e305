use hopfkit::constructions::*;
use hopfkit::factorization::*;
use hopfkit::hopf::{subalgebra_generate, tensor_hopf, SubHopf};
use hopfkit::linalg::Matrix;
use hopfkit::yd::{Character, FiniteAbelianGroup};
use hopfkit::{Field, Hopf};

fn qls_z2(theta: usize) -> Hopf {
    let g = FiniteAbelianGroup::cyclic(2);
    let chi = Character::new(&g, vec![1]).unwrap();
    let d = QlsDatum::new(g, vec![vec![1]; theta], vec![chi; theta]).unwrap();
    quantum_linear_space(&d, Field::Rationals).unwrap()
}

fn generated(h: &Hopf, idx: &[usize]) -> SubHopf {
    let seeds: Vec<_> = idx.iter().map(|&i| h.basis_vector(i)).collect();
    subalgebra_generate(h, &seeds).unwrap()
}

#[test]
fn search_examples() {
    let h4 = sweedler_h4(Field::Rationals).unwrap();
    let r = search_factorizations(&h4, &[]).unwrap();
    assert_eq!(r.verdict, SearchVerdict::Infactorisable, "{:?}", r.lattice.iter().map(|l| l.dim()).collect::<Vec<_>>());

    let f = Field::Cyclotomic(3);
    let t3 = taft(3, &f.zeta().unwrap()).unwrap();
    let r = search_factorizations(&t3, &[]).unwrap();
    assert_eq!(r.verdict, SearchVerdict::Infactorisable);

    let z6 = group_algebra(&FiniteGroup::cyclic(6), Field::Rationals).unwrap();
    let r = search_factorizations(&z6, &[]).unwrap();
    assert_eq!(r.verdict, SearchVerdict::Factorisable);
    let (a, b) = r.factorizations[0];
    let mut dims = [r.lattice[a].dim(), r.lattice[b].dim()];
    dims.sort();
    assert_eq!(dims, [2, 3]);
}

#[test]
fn drinfeld_double_round_trip() {
    let f = Field::Rationals;
    let s3 = FiniteGroup::symmetric(3);
    let d = drinfeld_double(&s3, f).unwrap();
    let n = 6;
    let a_cols: Vec<_> = (0..n).map(|a| d.basis_vector(a * n)).collect();
    // 1 (x) g = sum_a delta_a (x) g
    let h_cols: Vec<_> = (0..n)
        .map(|g| {
            let mut v = vec![f.zero(); 36];
            for a in 0..n {
                v[a * n + g] = f.one();
            }
            v
        })
        .collect();
    let a = SubHopf::new(&d, Matrix::from_columns(f, 36, &a_cols).unwrap()).unwrap();
    let h = SubHopf::new(&d, Matrix::from_columns(f, 36, &h_cols).unwrap()).unwrap();
    assert!(a.is_sub_hopf() && h.is_sub_hopf());
    let e = extract_matched_pair(&d, &a, &h).unwrap();
    assert_eq!(e.rebuilt.mult(), d.mult());
    assert_eq!(e.rebuilt.comult(), d.comult());
    let pair = drinfeld_double_pair(&s3, f).unwrap();
    assert_eq!(e.pair.alpha(), pair.alpha());
}

#[test]
fn qls_factorizations() {
    let h = qls_z2(3);
    let subs: Vec<_> = [4usize, 2, 1].iter().map(|&i| generated(&h, &[i])).collect();
    for s in &subs {
        assert_eq!(s.dim(), 2);
        assert!(s.is_sub_hopf());
    }
    for sigma in BracketTree::all(3) {
        let v = check_inner_double_factorization(&h, &subs, &sigma).unwrap();
        assert!(v.passed(), "{sigma}: {v:?}");
        assert_eq!(v.passed(), v.dimension_route());
        let cert = reconstruct(&h, &subs, &sigma).unwrap();
        assert_eq!(cert.isomorphism, Matrix::identity(Field::Rationals, 8));
    }
}

#[test]
fn h4_structural_rejection() {
    let h4 = sweedler_h4(Field::Rationals).unwrap();
    let g = generated(&h4, &[2]);
    let x = generated(&h4, &[1]);
    assert!(!x.certificates().comult_closed);
    let sigma = BracketTree::parse("(1 2)").unwrap();
    assert!(check_inner_double_factorization(&h4, &[g.clone(), x.clone()], &sigma).is_err());
    assert!(extract_matched_pair(&h4, &g, &x).is_err());
    assert!(commutation_check(&g, &x).unwrap());
}

#[test]
fn triple_tensor() {
    let f = Field::Rationals;
    let z2 = group_algebra(&FiniteGroup::cyclic(2), f).unwrap();
    let z3 = group_algebra(&FiniteGroup::cyclic(3), f).unwrap();
    let t = tensor_hopf(&tensor_hopf(&z2, &z3).unwrap(), &z2).unwrap();
    let subs = vec![generated(&t, &[6]), generated(&t, &[2]), generated(&t, &[1])];
    let c1 = reconstruct(&t, &subs, &BracketTree::parse("((1 2) 3)").unwrap()).unwrap();
    let c2 = reconstruct(&t, &subs, &BracketTree::parse("(1 (2 3))").unwrap()).unwrap();
    assert_eq!(c1.isomorphism, c2.isomorphism);
}
