//! The minor expansion of `det(A + B)` and the sum-determinant matrix.
//!
//! For `k x k` matrices,
//!
//! ```text
//! det(A + B) = Σ_{ℓ=0..k} Σ_{|I|=|J|=ℓ} (-1)^{σ(I,J)} det(A[I×J]) det(B[Ī×J̄])
//! ```
//!
//! with `σ(I,J) = Σ_{i∈I} i + Σ_{j∈J} j` over 1-based indices. Each `(I, J)`
//! contributes a rank-one summand to `H = (det(A_i + B_j))`, which bounds
//! `rank(H)` by the number of admissible pairs, `C(2k, k)`.

use num_integer::binomial;
use serde::Serialize;

use crate::algebra::{FieldSpec, IndexSet, Matrix, Scalar};
use crate::{Error, Result};

/// One admissible `(I, J)` pair of the expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorTermKey {
    #[serde(rename = "I")]
    pub rows: IndexSet,
    #[serde(rename = "J")]
    pub cols: IndexSet,
    pub parity: u8,
}

impl MinorTermKey {
    pub fn new(rows: IndexSet, cols: IndexSet) -> Result<Self> {
        let parity = sigma_parity(&rows, &cols)?;
        Ok(MinorTermKey { rows, cols, parity })
    }

    /// `(-1)^σ` in the given field.
    pub fn sign(&self, field: FieldSpec) -> Scalar {
        if self.parity == 0 {
            Scalar::one(field)
        } else {
            Scalar::one(field).neg()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionTerm {
    #[serde(flatten)]
    pub key: MinorTermKey,
    #[serde(rename = "minorA")]
    pub minor_a: Scalar,
    #[serde(rename = "minorB")]
    pub minor_b: Scalar,
    pub product: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumExpansion {
    pub k: usize,
    pub terms: Vec<ExpansionTerm>,
    pub total: Scalar,
}

/// Parity of `σ(I, J)`, the sum of all 1-based members of both sets.
pub fn sigma_parity(rows: &IndexSet, cols: &IndexSet) -> Result<u8> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch { left: rows.len(), right: cols.len() });
    }
    if rows.ambient() != cols.ambient() {
        return Err(Error::IndexOutOfRange(format!(
            "index sets over [{}] and [{}]",
            rows.ambient(),
            cols.ambient()
        )));
    }
    Ok(((rows.sum() + cols.sum()) % 2) as u8)
}

/// All admissible `(I, J)` with `|I| = |J|`, ordered lexicographically by
/// `(ℓ, I, J)`. There are `C(2k, k)` of them.
pub fn admissible_pairs(k: usize) -> Vec<MinorTermKey> {
    (0..=k)
        .flat_map(|l| {
            let subsets: Vec<IndexSet> = IndexSet::subsets(k, l).collect();
            let mut keys = Vec::with_capacity(subsets.len() * subsets.len());
            for rows in &subsets {
                for cols in &subsets {
                    keys.push(MinorTermKey::new(rows.clone(), cols.clone()).expect("equal sizes"));
                }
            }
            keys
        })
        .collect()
}

fn check_pair(a: &Matrix, b: &Matrix) -> Result<usize> {
    a.field().ensure_same(b.field())?;
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.rows())
}

/// The signed product `(-1)^σ det(A[I×J]) det(B[Ī×J̄])`, with its factors.
fn term(a: &Matrix, b: &Matrix, key: &MinorTermKey) -> Result<(Scalar, Scalar, Scalar)> {
    let minor_a = a.submatrix(&key.rows, &key.cols)?.det()?;
    let minor_b = b.submatrix(&key.rows.complement(), &key.cols.complement())?.det()?;
    let product = key.sign(a.field()).mul(&minor_a)?.mul(&minor_b)?;
    Ok((minor_a, minor_b, product))
}

pub fn expand_det_sum(a: &Matrix, b: &Matrix) -> Result<SumExpansion> {
    let k = check_pair(a, b)?;
    let mut total = Scalar::zero(a.field());
    let mut terms = Vec::new();
    for key in admissible_pairs(k) {
        let (minor_a, minor_b, product) = term(a, b, &key)?;
        total = total.add(&product)?;
        terms.push(ExpansionTerm { key, minor_a, minor_b, product });
    }
    Ok(SumExpansion { k, terms, total })
}

/// `H = (det(A_i + B_j))` together with the families that generated it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMatrix {
    n: usize,
    k: usize,
    family_a: Vec<Matrix>,
    family_b: Vec<Matrix>,
    entries: Matrix,
}

fn check_families(family_a: &[Matrix], family_b: &[Matrix]) -> Result<(usize, usize, FieldSpec)> {
    if family_a.is_empty() || family_b.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family_a.len() != family_b.len() {
        return Err(Error::ShapeMismatch(format!(
            "families of sizes {} and {}",
            family_a.len(),
            family_b.len()
        )));
    }
    let first = &family_a[0];
    let k = check_pair(first, first)?;
    for m in family_a.iter().chain(family_b) {
        check_pair(first, m)?;
    }
    Ok((family_a.len(), k, first.field()))
}

impl HMatrix {
    pub fn build(family_a: Vec<Matrix>, family_b: Vec<Matrix>) -> Result<Self> {
        let (n, k, field) = check_families(&family_a, &family_b)?;
        let mut cells = Vec::with_capacity(n * n);
        for a in &family_a {
            for b in &family_b {
                cells.push(a.add(b)?.det()?);
            }
        }
        let entries = Matrix::from_scalars(field, n, n, cells)?;
        Ok(HMatrix { n, k, family_a, family_b, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> FieldSpec {
        self.entries.field()
    }

    pub fn family_a(&self) -> &[Matrix] {
        &self.family_a
    }

    pub fn family_b(&self) -> &[Matrix] {
        &self.family_b
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// `h_ij` at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(i, j)
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        self.entries.is_zero_at(i, j)
    }

    pub fn rank(&self) -> usize {
        self.entries.rank()
    }

    /// The rank-one summand `H^(I,J)`.
    pub fn rank_one_component(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Matrix> {
        component(&self.family_a, &self.family_b, self.k, rows, cols)
    }
}

// h^(I,J)_ij = sign * det(A_i[I×J]) * det(B_j[Ī×J̄]), an outer product
fn component(
    family_a: &[Matrix],
    family_b: &[Matrix],
    k: usize,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<Matrix> {
    if rows.ambient() != k || cols.ambient() != k {
        return Err(Error::IndexOutOfRange(format!("index sets must live in [{k}]")));
    }
    let key = MinorTermKey::new(rows.clone(), cols.clone())?;
    let field = family_a[0].field();
    let left = family_a
        .iter()
        .map(|a| key.sign(field).mul(&a.submatrix(rows, cols)?.det()?))
        .collect::<Result<Vec<_>>>()?;
    let (rc, cc) = (rows.complement(), cols.complement());
    let right = family_b
        .iter()
        .map(|b| b.submatrix(&rc, &cc)?.det())
        .collect::<Result<Vec<_>>>()?;
    let n = left.len();
    let mut cells = Vec::with_capacity(n * n);
    for l in &left {
        for r in &right {
            cells.push(l.mul(r)?);
        }
    }
    Matrix::from_scalars(field, n, n, cells)
}

/// Builds `H` from two equal-length families of `k x k` matrices over one field.
pub fn build_h_matrix(family_a: &[Matrix], family_b: &[Matrix]) -> Result<HMatrix> {
    HMatrix::build(family_a.to_vec(), family_b.to_vec())
}

pub fn rank_one_component(
    family_a: &[Matrix],
    family_b: &[Matrix],
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<Matrix> {
    let (_, k, _) = check_families(family_a, family_b)?;
    component(family_a, family_b, k, rows, cols)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CentralBinomial {
    pub k: usize,
    /// `C(2k, k)`
    pub central: u128,
    /// `Σ_{i=0..k} C(k, i)^2`
    pub sum_of_squares: u128,
}

/// `C(2k, k)` and `Σ C(k,i)^2`, which must coincide (Vandermonde).
pub fn central_binomial_bound(k: usize) -> CentralBinomial {
    let central = binomial(2 * k as u128, k as u128);
    let sum_of_squares = (0..=k as u128).map(|i| binomial(k as u128, i).pow(2)).sum();
    assert_eq!(central, sum_of_squares, "Vandermonde identity failed for k = {k}");
    CentralBinomial { k, central, sum_of_squares }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankBoundReport {
    pub n: usize,
    pub k: usize,
    pub rank: usize,
    pub bound: u128,
    pub holds: bool,
}

/// Exact `rank(H)` against `C(2k, k)`. `holds == false` means a bug here,
/// never an expected outcome.
pub fn verify_rank_bound(h: &HMatrix) -> RankBoundReport {
    let rank = h.rank();
    let bound = central_binomial_bound(h.k()).central;
    RankBoundReport { n: h.n(), k: h.k(), rank, bound, holds: rank as u128 <= bound }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn set(k: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(k, m.iter().copied()).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_parity(&IndexSet::empty(3), &IndexSet::empty(3)).unwrap(), 0);
        assert_eq!(sigma_parity(&set(1, &[1]), &set(1, &[1])).unwrap(), 0);
        assert_eq!(sigma_parity(&set(4, &[1, 3]), &set(4, &[2, 3])).unwrap(), 1);
        assert!(matches!(
            sigma_parity(&set(3, &[1]), &set(3, &[1, 2])),
            Err(Error::SizeMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn one_by_one_expansion() {
        let a = Matrix::from_rows(q(), &[vec![2]]).unwrap();
        let b = Matrix::from_rows(q(), &[vec![3]]).unwrap();
        let e = expand_det_sum(&a, &b).unwrap();
        assert_eq!(e.terms.len(), 2);
        // ℓ = 0 contributes det(B), ℓ = 1 contributes det(A)
        assert_eq!(e.terms[0].product, Scalar::from_i64(q(), 3));
        assert_eq!(e.terms[1].product, Scalar::from_i64(q(), 2));
        assert_eq!(e.total, Scalar::from_i64(q(), 5));
    }

    #[test]
    fn zero_b_keeps_only_last_term() {
        let a = Matrix::from_rows(q(), &[vec![1, 2, 0], vec![-1, 3, 4], vec![5, 0, 2]]).unwrap();
        let e = expand_det_sum(&a, &Matrix::zero(q(), 3, 3)).unwrap();
        assert_eq!(e.total, a.det().unwrap());
        for t in &e.terms {
            if t.key.rows.len() < 3 {
                assert!(t.product.is_zero());
            }
        }
    }

    #[test]
    fn expansion_rejects_bad_shapes() {
        let a = Matrix::identity(q(), 2);
        assert!(matches!(expand_det_sum(&a, &Matrix::identity(q(), 3)), Err(Error::ShapeMismatch(_))));
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(matches!(
            expand_det_sum(&a, &Matrix::identity(f7, 2)),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(matches!(
            expand_det_sum(&Matrix::zero(q(), 2, 3), &Matrix::zero(q(), 2, 3)),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn term_order_is_lexicographic() {
        let keys = admissible_pairs(2);
        let listed: Vec<(Vec<usize>, Vec<usize>)> = keys
            .iter()
            .map(|k| (k.rows.members().to_vec(), k.cols.members().to_vec()))
            .collect();
        assert_eq!(
            listed,
            vec![
                (vec![], vec![]),
                (vec![1], vec![1]),
                (vec![1], vec![2]),
                (vec![2], vec![1]),
                (vec![2], vec![2]),
                (vec![1, 2], vec![1, 2]),
            ]
        );
    }

    #[test]
    fn h_of_single_identity() {
        let i2 = Matrix::identity(q(), 2);
        let h = build_h_matrix(&[i2.clone()], &[i2]).unwrap();
        assert_eq!(h.get(0, 0), Scalar::from_i64(q(), 4));
        assert!(matches!(build_h_matrix(&[], &[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn empty_index_component_is_det_b_row() {
        let fam_a = vec![Matrix::identity(q(), 2), Matrix::zero(q(), 2, 2)];
        let fam_b = vec![
            Matrix::from_rows(q(), &[vec![1, 2], vec![3, 4]]).unwrap(),
            Matrix::from_rows(q(), &[vec![2, 0], vec![0, 5]]).unwrap(),
        ];
        let c = rank_one_component(&fam_a, &fam_b, &IndexSet::empty(2), &IndexSet::empty(2)).unwrap();
        for i in 0..2 {
            assert_eq!(c.get(i, 0), Scalar::from_i64(q(), -2));
            assert_eq!(c.get(i, 1), Scalar::from_i64(q(), 10));
        }
        assert!(c.rank() <= 1);
    }

    #[test]
    fn central_binomials() {
        assert_eq!(central_binomial_bound(0).central, 1);
        assert_eq!(central_binomial_bound(1).central, 2);
        assert_eq!(central_binomial_bound(2).central, 6);
        assert_eq!(central_binomial_bound(6).central, 924);
    }

    #[test]
    fn rank_bound_single_entry() {
        let a = Matrix::from_rows(q(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let r = verify_rank_bound(&build_h_matrix(&[a.clone()], &[a.neg()]).unwrap());
        assert_eq!(r.rank, 0);
        assert!(r.holds);
    }
}
