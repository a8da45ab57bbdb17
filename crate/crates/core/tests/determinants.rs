mod oracles;

use nss_core::algebra::{FieldSpec, IndexSet, Matrix};
use nss_core::detsum::{admissible_pairs, central_binomial_bound, expand_det_sum, sigma_parity};
use nss_core::rng::{random_matrix, SplitMix64};

use oracles::{cofactor_det, minor_rank, pascal};

fn fields() -> Vec<FieldSpec> {
    let mut f = vec![FieldSpec::Rationals];
    f.extend([2, 3, 5, 7, 101].map(|p| FieldSpec::prime(p).unwrap()));
    f
}

#[test]
fn det_matches_cofactor_expansion() {
    let mut rng = SplitMix64::new(11);
    for field in fields() {
        for k in 0..=5 {
            for _ in 0..10 {
                let m = random_matrix(&mut rng, field, k, k);
                assert_eq!(m.det().unwrap(), cofactor_det(&m), "{field} k={k}\n{m:?}");
            }
        }
    }
}

#[test]
fn expansion_total_and_minors_match_cofactor() {
    let mut rng = SplitMix64::new(12);
    for field in fields() {
        for k in 1..=4 {
            for _ in 0..5 {
                let a = random_matrix(&mut rng, field, k, k);
                let b = random_matrix(&mut rng, field, k, k);
                let e = expand_det_sum(&a, &b).unwrap();
                assert_eq!(e.terms.len() as u128, pascal(2 * k, k));
                assert_eq!(e.total, cofactor_det(&a.add(&b).unwrap()));
                for t in &e.terms {
                    let minor = cofactor_det(&a.submatrix(&t.key.rows, &t.key.cols).unwrap());
                    assert_eq!(t.minor_a, minor);
                    let (rc, cc) = (t.key.rows.complement(), t.key.cols.complement());
                    assert_eq!(t.minor_b, cofactor_det(&b.submatrix(&rc, &cc).unwrap()));
                }
            }
        }
    }
}

#[test]
fn rank_matches_minor_enumeration() {
    let mut rng = SplitMix64::new(13);
    for field in fields() {
        for (r, c) in [(1, 1), (2, 3), (3, 2), (3, 3), (4, 4), (3, 5)] {
            for _ in 0..6 {
                let mut m = random_matrix(&mut rng, field, r, c);
                if rng.below(2) == 0 && r > 1 {
                    // force a repeated row to exercise rank deficiency
                    let rows: Vec<Vec<i64>> = (0..r)
                        .map(|i| (0..c).map(|j| if i == r - 1 { j as i64 } else { (i + j) as i64 % 3 }).collect())
                        .collect();
                    m = Matrix::from_rows(field, &rows).unwrap();
                }
                assert_eq!(m.rank(), minor_rank(&m), "{field}\n{m:?}");
            }
        }
    }
}

#[test]
fn central_binomial_matches_pascal() {
    for k in 0..=30 {
        let c = central_binomial_bound(k);
        assert_eq!(c.central, pascal(2 * k, k));
        assert_eq!(c.sum_of_squares, (0..=k).map(|i| pascal(k, i).pow(2)).sum::<u128>());
        assert_eq!(admissible_pairs(k.min(6)).len() as u128, pascal(2 * k.min(6), k.min(6)));
    }
}

#[test]
fn sigma_parity_is_sum_of_labels() {
    for k in 1..=5 {
        for key in admissible_pairs(k) {
            let total: usize = key.rows.members().iter().chain(key.cols.members()).sum();
            assert_eq!(sigma_parity(&key.rows, &key.cols).unwrap() as usize, total % 2);
        }
    }
    let i = IndexSet::new(3, vec![1, 3]).unwrap();
    let j = IndexSet::new(3, vec![2, 3]).unwrap();
    assert_eq!(sigma_parity(&i, &j).unwrap(), 1);
}
