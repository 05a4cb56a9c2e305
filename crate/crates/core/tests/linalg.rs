use hopfkit::linalg::{contract, solve_linear, Matrix, Solution, SparseTensor, Term};
use hopfkit::{Field, Scalar};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    // small entries with plenty of zeros to hit rank deficiency
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..4], rows * cols).prop_map(move |v| {
        let f = Field::Rationals;
        let rows_v: Vec<Vec<Scalar>> = v.chunks(cols).map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Matrix::from_rows(f, rows_v).unwrap()
    })
}

fn tensor(dims: Vec<usize>) -> impl Strategy<Value = SparseTensor> {
    let total: usize = dims.iter().product();
    prop::collection::vec(prop_oneof![2 => Just(0i64), 1 => -2i64..3], total).prop_map(move |v| {
        let f = Field::prime(97).unwrap();
        let mut idx = vec![0; dims.len()];
        let mut entries = Vec::new();
        for (flat, &x) in v.iter().enumerate() {
            let mut r = flat;
            for k in (0..dims.len()).rev() {
                idx[k] = r % dims[k];
                r /= dims[k];
            }
            entries.push((idx.clone(), f.from_i64(x)));
        }
        SparseTensor::from_entries(f, dims.clone(), entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_invariants(a in matrix(4, 5), x in matrix(5, 1), noise in matrix(4, 1)) {
        let b = a.matmul(&x).unwrap();
        match solve_linear(&a, &b).unwrap() {
            Solution::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
            Solution::Affine { particular, kernel } => {
                prop_assert_eq!(a.matmul(&particular).unwrap(), b.clone());
                prop_assert_eq!(kernel.len() + a.rank(), a.cols());
                for k in &kernel {
                    prop_assert!(a.apply(k).iter().all(|v| v.is_zero()));
                }
            }
        }
        // b + noise is solvable exactly when it stays in the column space
        let target = Matrix::from_columns(Field::Rationals, 4, &[b.column(0).iter().zip(noise.column(0)).map(|(p, q)| p + &q).collect::<Vec<_>>()]).unwrap();
        let in_span = a.hstack(&target).unwrap().rank() == a.rank();
        let solvable = !matches!(solve_linear(&a, &target).unwrap(), Solution::Inconsistent);
        prop_assert_eq!(in_span, solvable);
    }

    #[test]
    fn rank_is_transpose_invariant(a in matrix(5, 3)) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn contraction_order_is_irrelevant(
        s in tensor(vec![2, 3]),
        t in tensor(vec![3, 2, 2]),
        u in tensor(vec![2, 2]),
    ) {
        let terms = [Term::new(&s, "i j"), Term::new(&t, "j k l"), Term::new(&u, "l i")];
        let base = contract(&terms, &["k"], None).unwrap();
        for order in [[0usize, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            prop_assert_eq!(&contract(&terms, &["k"], Some(&order)).unwrap(), &base);
        }
        // matches a dense nested-loop evaluation
        let f = Field::prime(97).unwrap();
        for k in 0..2 {
            let mut acc = f.zero();
            for i in 0..2 {
                for j in 0..3 {
                    for l in 0..2 {
                        acc = &acc + &(&(&s.get(&[i, j]) * &t.get(&[j, k, l])) * &u.get(&[l, i]));
                    }
                }
            }
            prop_assert_eq!(base.get(&[k]), acc);
        }
    }
}
