use bialgebroid::fixtures::truncated;
use bialgebroid::matrix::{is_zero_vec, Matrix, Subspace, Vector};
use bialgebroid::tensor::{Relation, TensorQuotient};
use bialgebroid::{Field, Scalar};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::prime(2).unwrap()), Just(Field::prime(3).unwrap()), Just(Field::prime(7).unwrap()), Just(Field::Rationals)]
}

fn scalar(f: Field, n: i64, d: i64) -> Scalar {
    match f {
        Field::Rationals => f.from_ratio(n, d).unwrap(),
        _ => f.from_i64(n),
    }
}

prop_compose! {
    fn matrix_in(f: Field, max: usize)(rows in 1..=max, cols in 1..=max)
        (entries in prop::collection::vec((-4i64..5, 1i64..4), rows * cols), cols in Just(cols)) -> Matrix {
        let rows_v: Vec<Vector> = entries.chunks(cols).map(|r| r.iter().map(|&(n, d)| scalar(f, n, d)).collect()).collect();
        Matrix::from_rows(f, &rows_v, cols).unwrap()
    }
}

fn field_and_matrix() -> impl Strategy<Value = (Field, Matrix)> {
    field_strategy().prop_flat_map(|f| (Just(f), matrix_in(f, 6)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_plus_nullity((_, m) in field_and_matrix()) {
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn rank_of_transpose((_, m) in field_and_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn affine_solutions_solve((f, m) in field_and_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
        let x: Vector = (0..m.cols()).map(|i| f.from_i64(seed[i])).collect();
        let b = m.mul_vec(&x);
        let (sol, homogeneous) = m.solve_affine(&b).expect("b lies in the column space");
        prop_assert_eq!(m.mul_vec(&sol), b);
        prop_assert_eq!(homogeneous.len(), m.cols() - m.rank());
    }

    #[test]
    fn inverse_is_two_sided((f, m) in field_and_matrix()) {
        if m.rows() == m.cols() {
            match m.invert() {
                Some(inv) => {
                    prop_assert_eq!(m.mul(&inv), Matrix::identity(f, m.rows()));
                    prop_assert_eq!(inv.mul(&m), Matrix::identity(f, m.rows()));
                }
                None => prop_assert!(m.rank() < m.rows()),
            }
        }
    }

    #[test]
    fn field_laws(f in field_strategy(), a in (-9i64..10, 1i64..5), b in (-9i64..10, 1i64..5), c in (-9i64..10, 1i64..5)) {
        let (x, y, z) = (scalar(f, a.0, a.1), scalar(f, b.0, b.1), scalar(f, c.0, c.1));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv()).is_one());
        }
        prop_assert_eq!(f.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn subspace_coordinates_recombine((_, m) in field_and_matrix()) {
        let span = Subspace::span(m.field(), m.rows(), m.col_vectors());
        prop_assert_eq!(span.dim(), m.rank());
        for v in m.col_vectors() {
            let c = span.coords(&v).expect("columns lie in their span");
            prop_assert_eq!(span.combine(&c), v);
        }
    }
}

fn mult_ops(a: &bialgebroid::algebra::Algebra, right: bool) -> Vec<Matrix> {
    (0..a.dim()).map(|i| if right { a.right_mul_matrix(&a.basis(i)) } else { a.left_mul_matrix(&a.basis(i)) }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `A ⊗_A A ≅ A` for `A = F_p[t]/(t^n)`; projection splits the lift and
    /// kills the balancing relation.
    #[test]
    fn balanced_square_of_truncated(p in prop::sample::select(vec![2u32, 3, 5]), n in 1usize..5, coeffs in prop::collection::vec(0i64..5, 25), a in 0usize..5) {
        let f = Field::prime(p).unwrap();
        let alg = truncated(f, "t", n);
        let q = TensorQuotient::balanced(f, n, mult_ops(&alg, true), n, mult_ops(&alg, false), &alg.generators()).unwrap();
        prop_assert_eq!(q.dim(), n);
        let v: Vector = (0..n * n).map(|i| f.from_i64(coeffs[i])).collect();
        let pv = q.project(&v);
        prop_assert_eq!(q.project(&q.lift(&pv)), pv);
        let a = a % n;
        for x in 0..n {
            for y in 0..n {
                let xa = alg.mul(&alg.basis(x), &alg.basis(a));
                let ay = alg.mul(&alg.basis(a), &alg.basis(y));
                let lhs = q.project(&bialgebroid::bialgebroid::kron(&xa, &alg.basis(y)));
                let rhs = q.project(&bialgebroid::bialgebroid::kron(&alg.basis(x), &ay));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    /// A three-fold chain `A ⊗_A A ⊗_A A` collapses to `A`.
    #[test]
    fn triple_chain_of_truncated(p in prop::sample::select(vec![2u32, 3]), n in 1usize..4) {
        let f = Field::prime(p).unwrap();
        let alg = truncated(f, "t", n);
        let rels = vec![
            Relation::new(0, mult_ops(&alg, true), 1, mult_ops(&alg, false)),
            Relation::new(1, mult_ops(&alg, true), 2, mult_ops(&alg, false)),
        ];
        let q = TensorQuotient::new(f, vec![n, n, n], rels, &alg.generators()).unwrap();
        prop_assert_eq!(q.dim(), n);
        let all_pure: Vec<Vector> = (0..n).map(|k| q.project_pure(&[k, 0, 0])).collect();
        for (k, pure) in all_pure.iter().enumerate() {
            prop_assert_eq!(&q.project_pure(&[0, 0, k]), pure);
        }
    }
}

#[test]
fn rank_nullity_frozen_example() {
    // Over F_2 the all-ones 3×3 matrix has rank one; over Q, [[1,2],[2,4]] too.
    let f2 = Field::prime(2).unwrap();
    let ones = Matrix::from_rows(f2, &vec![vec![f2.one(); 3]; 3], 3).unwrap();
    assert_eq!(ones.rank(), 1);
    assert_eq!(ones.kernel().len(), 2);
    let q = Field::Rationals;
    let m = Matrix::from_rows(q, &[vec![q.from_i64(1), q.from_i64(2)], vec![q.from_i64(2), q.from_i64(4)]], 2).unwrap();
    assert_eq!(m.rank(), 1);
    assert_eq!(m.kernel(), vec![vec![q.from_i64(-2), q.from_i64(1)]]);
}
