use nss_core::algebra::{solve_consistency, Consistency, FieldSpec, Matrix, Scalar};
use nss_core::detsum::{build_h_matrix, expand_det_sum, verify_rank_bound};
use nss_core::flats::{affine_span_dim, intersection_dimension, GraphFlat};
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        prop::sample::select(vec![2u64, 3, 5, 7, 101]).prop_map(|p| FieldSpec::prime(p).unwrap()),
    ]
}

fn matrix(field: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-9i64..=9, rows * cols).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(cols.max(1)).map(<[i64]>::to_vec).collect();
        if cols == 0 {
            Matrix::zero(field, rows.len(), 0)
        } else {
            Matrix::from_rows(field, &rows).unwrap()
        }
    })
}

fn square_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
    (field(), 1usize..=4).prop_flat_map(|(f, k)| (matrix(f, k, k), matrix(f, k, k)))
}

fn fraction_matrix(k: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-9i64..=9, 1i64..=6), k * k).prop_map(move |v| {
        let cells = v.into_iter().map(|(n, d)| Scalar::rational(n, d).unwrap()).collect();
        Matrix::from_scalars(FieldSpec::Rationals, k, k, cells).unwrap()
    })
}

fn flat2() -> impl Strategy<Value = GraphFlat> {
    (prop::collection::vec(-3i64..=3, 4), prop::collection::vec(-3i64..=3, 2))
        .prop_map(|(a, v)| GraphFlat::from_ints(&[a[..2].to_vec(), a[2..].to_vec()], &v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn nonsingular_iff_full_rank((a, _) in square_pair()) {
        prop_assert_eq!(!a.det().unwrap().is_zero(), a.rank() == a.rows());
    }

    #[test]
    fn det_is_multiplicative((a, b) in square_pair()) {
        let lhs = a.mul(&b).unwrap().det().unwrap();
        let rhs = a.det().unwrap().mul(&b.det().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_is_transpose_invariant(m in (field(), 1usize..=5, 1usize..=5).prop_flat_map(|(f, r, c)| matrix(f, r, c))) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in kernel {
            let col = Matrix::column(m.field(), v).unwrap();
            prop_assert!(m.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn rationals_stay_reduced(a in fraction_matrix(3), b in fraction_matrix(3)) {
        let products = a.mul(&b).unwrap().add(&a).unwrap();
        let mut cells = products.scalars();
        cells.push(products.det().unwrap());
        cells.extend(expand_det_sum(&a, &b).unwrap().terms.into_iter().map(|t| t.product));
        for c in cells {
            let r = c.as_rational().unwrap();
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()) == 1.into());
        }
    }

    #[test]
    fn expansion_is_symmetric((a, b) in square_pair()) {
        let ab = expand_det_sum(&a, &b).unwrap();
        let ba = expand_det_sum(&b, &a).unwrap();
        prop_assert_eq!(&ab.total, &ba.total);
        prop_assert_eq!(&ab.total, &a.add(&b).unwrap().det().unwrap());
        // swapping the summands pairs (I, J) with the complements
        for t in &ab.terms {
            let partner = ba.terms.iter()
                .find(|u| u.key.rows == t.key.rows.complement() && u.key.cols == t.key.cols.complement())
                .unwrap();
            prop_assert_eq!(&t.product, &partner.product);
        }
    }

    #[test]
    fn h_rank_within_central_binomial(
        (fam_a, fam_b) in (field(), 1usize..=2, 1usize..=6)
            .prop_flat_map(|(f, k, n)| (prop::collection::vec(matrix(f, k, k), n), prop::collection::vec(matrix(f, k, k), n)))
    ) {
        let h = build_h_matrix(&fam_a, &fam_b).unwrap();
        prop_assert!(verify_rank_bound(&h).holds);
    }

    #[test]
    fn consistency_dimension_matches_rank(m in matrix(FieldSpec::Rationals, 3, 3), b in matrix(FieldSpec::Rationals, 3, 1)) {
        let c = solve_consistency(&m, &b).unwrap();
        let augmented = Matrix::hstack(&[&m, &b]).unwrap().rank();
        match c {
            Consistency::Inconsistent => prop_assert!(augmented > m.rank()),
            Consistency::UniqueSolution => prop_assert_eq!(m.rank(), 3),
            Consistency::AffineSolutionSpace { dim } => prop_assert_eq!(dim, 3 - m.rank()),
        }
    }

    #[test]
    fn flat_intersections_are_consistent(f in flat2(), e in flat2()) {
        let dim = intersection_dimension(&f, &e).unwrap();
        prop_assert_eq!(dim, intersection_dimension(&e, &f).unwrap());
        let nonsingular = f.slope().sub(e.slope()).unwrap().is_nonsingular().unwrap();
        prop_assert_eq!(dim == 0, nonsingular);
        let span = affine_span_dim(&f, &e).unwrap();
        prop_assert!((2..=4).contains(&span));
        prop_assert_eq!(span == 2, f == e);
        if f != e && !f.is_parallel_to(&e) {
            prop_assert_eq!(span == 3, dim == 1);
        }
    }
}
