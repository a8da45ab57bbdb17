//! The two extremal families: sign-diagonal matrices, where almost every sum
//! is singular, and complementary embedded identities, where a near-`4^k`
//! family has a perfect matching but very few nonsingular sums.

use num_integer::binomial;
use serde::Serialize;

use crate::algebra::{FieldSpec, IndexSet, Matrix};
use crate::detsum::build_h_matrix;
use crate::sumgraph::BipartiteSumGraph;
use crate::{Error, Result};

/// `S = {-s, …, -1, 1, …, s}`, ascending.
pub fn symmetric_range(s: usize) -> Vec<i64> {
    let s = s as i64;
    (-s..=s).filter(|&t| t != 0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example1Family {
    pub k: usize,
    pub s: usize,
    pub field: FieldSpec,
    pub members: Vec<Matrix>,
}

/// Diagonal `k x k` matrices with the first `k - 1` diagonal entries in
/// `{-1, 1}` and the last in `S`: `s·2^k` members, ordered by sign vector
/// (lexicographic, `-1` first) and then by last entry.
pub fn example1(k: usize, s: usize) -> Result<Example1Family> {
    if k == 0 || s == 0 {
        return Err(Error::InvalidParameter(format!("the sign-diagonal family needs k, s >= 1 (got k={k}, s={s})")));
    }
    let field = FieldSpec::Rationals;
    let last = symmetric_range(s);
    let mut members = Vec::with_capacity(last.len() << (k - 1));
    for signs in 0..1usize << (k - 1) {
        for &t in &last {
            members.push(Matrix::from_fn(field, k, k, |i, j| {
                if i != j {
                    0
                } else if i == k - 1 {
                    t
                } else if signs >> (k - 2 - i) & 1 == 0 {
                    -1
                } else {
                    1
                }
            }));
        }
    }
    Ok(Example1Family { k, s, field, members })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example1Report {
    pub k: usize,
    pub s: usize,
    pub size: usize,
    pub nonsingular_ordered_pairs: usize,
    /// `|M|·(2s - 1)`
    pub expected: usize,
    pub holds: bool,
}

/// Counts ordered pairs `(A, B)` with `det(A + B) ≠ 0` by testing every sum.
pub fn verify_example1_counts(f: &Example1Family) -> Result<Example1Report> {
    let mut count = 0;
    for a in &f.members {
        for b in &f.members {
            if a.add(b)?.is_nonsingular()? {
                count += 1;
            }
        }
    }
    let size = f.members.len();
    let expected = size * (2 * f.s - 1);
    Ok(Example1Report {
        k: f.k,
        s: f.s,
        size,
        nonsingular_ordered_pairs: count,
        expected,
        holds: count == expected && size == f.s << f.k,
    })
}

/// `M^t_{I,J}`: zero except `t` at `(i_ℓ, j_ℓ)` for the sorted members of
/// `I` and `J`.
pub fn embedded_diagonal(k: usize, rows: &IndexSet, cols: &IndexSet, t: i64) -> Result<Matrix> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch { left: rows.len(), right: cols.len() });
    }
    if rows.ambient() != k || cols.ambient() != k {
        return Err(Error::IndexOutOfRange(format!("index sets must live in [{k}]")));
    }
    let mut entries = vec![0; k * k];
    for (&i, &j) in rows.members().iter().zip(cols.members()) {
        entries[(i - 1) * k + (j - 1)] = t;
    }
    Ok(Matrix::from_fn(FieldSpec::Rationals, k, k, |i, j| entries[i * k + j]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Example2Variant {
    /// `t = 1` only, one pair per complementary `{(I,J), (Ī,J̄)}`:
    /// `C(k,k/2)²/2` pairs.
    IdentityOnly,
    /// Every `t ∈ S`: `s·C(k,k/2)²` pairs.
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairLabel {
    #[serde(rename = "I")]
    pub rows: IndexSet,
    #[serde(rename = "J")]
    pub cols: IndexSet,
    pub t: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example2Family {
    pub k: usize,
    pub s: usize,
    pub variant: Example2Variant,
    /// `left[r] = M^t_{I,J}` for `pairing[r] = (I, J, t)`.
    pub left: Vec<Matrix>,
    /// `right[r] = M^t_{Ī,J̄}`.
    pub right: Vec<Matrix>,
    pub pairing: Vec<PairLabel>,
}

/// `(I, J)` with `|I| = |J| = k/2` that precede their complement pair
/// `(Ī, J̄)` lexicographically.
fn complement_representatives(k: usize) -> Vec<(IndexSet, IndexSet)> {
    let half: Vec<IndexSet> = IndexSet::subsets(k, k / 2).collect();
    let mut reps = Vec::new();
    for rows in &half {
        for cols in &half {
            let pair = (rows.clone(), cols.clone());
            if pair < (rows.complement(), cols.complement()) {
                reps.push(pair);
            }
        }
    }
    reps
}

pub fn example2(k: usize, s: usize, variant: Example2Variant) -> Result<Example2Family> {
    if k % 2 == 1 {
        return Err(Error::OddDimension(k));
    }
    if k == 0 || s == 0 {
        return Err(Error::InvalidParameter(format!("the embedded-identity family needs k, s >= 1 (got k={k}, s={s})")));
    }
    let ts = match variant {
        Example2Variant::IdentityOnly => vec![1],
        Example2Variant::Extended => symmetric_range(s),
    };
    let (mut left, mut right, mut pairing) = (Vec::new(), Vec::new(), Vec::new());
    for (rows, cols) in complement_representatives(k) {
        for &t in &ts {
            left.push(embedded_diagonal(k, &rows, &cols, t)?);
            right.push(embedded_diagonal(k, &rows.complement(), &cols.complement(), t)?);
            pairing.push(PairLabel { rows: rows.clone(), cols: cols.clone(), t });
        }
    }
    Ok(Example2Family { k, s, variant, left, right, pairing })
}

impl Example2Family {
    pub fn expected_size(&self) -> usize {
        let c = binomial(self.k, self.k / 2);
        match self.variant {
            Example2Variant::IdentityOnly => c * c / 2,
            Example2Variant::Extended => self.s * c * c,
        }
    }

    pub fn expected_partners(&self) -> usize {
        match self.variant {
            Example2Variant::IdentityOnly => 1,
            Example2Variant::Extended => 2 * self.s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example2Report {
    pub k: usize,
    pub s: usize,
    pub variant: Example2Variant,
    pub n: usize,
    pub expected_n: usize,
    /// For each left vertex, the number of right vertices with a nonsingular sum.
    pub per_vertex_nonsingular_partners: Vec<usize>,
    pub expected_partners: usize,
    pub edge_count: usize,
    /// Nonsingular exactly when the `(I, J)` labels coincide; for the
    /// identity-only variant this is the identity pattern.
    pub diagonal_pattern_holds: bool,
    pub holds: bool,
}

pub fn verify_example2_counts(f: &Example2Family) -> Result<Example2Report> {
    let h = build_h_matrix(&f.left, &f.right)?;
    let g = BipartiteSumGraph::from_h(&h);
    let n = f.left.len();
    let per_vertex: Vec<usize> = (0..n).map(|i| g.neighbors(i).count()).collect();
    let pattern = (0..n).all(|i| {
        (0..n).all(|j| {
            let same = f.pairing[i].rows == f.pairing[j].rows && f.pairing[i].cols == f.pairing[j].cols;
            g.has_edge(i, j) == same
        })
    });
    let expected_partners = f.expected_partners();
    let expected_n = f.expected_size();
    Ok(Example2Report {
        k: f.k,
        s: f.s,
        variant: f.variant,
        n,
        expected_n,
        holds: n == expected_n && pattern && per_vertex.iter().all(|&c| c == expected_partners),
        per_vertex_nonsingular_partners: per_vertex,
        expected_partners,
        edge_count: g.edge_count(),
        diagonal_pattern_holds: pattern,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    fn set(k: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(k, m.iter().copied()).unwrap()
    }

    fn diag(m: &Matrix) -> Vec<String> {
        (0..m.rows()).map(|i| m.get(i, i).to_string()).collect()
    }

    #[test]
    fn example1_small_families() {
        let f = example1(2, 1).unwrap();
        let d: Vec<Vec<String>> = f.members.iter().map(diag).collect();
        assert_eq!(d, vec![vec!["-1", "-1"], vec!["-1", "1"], vec!["1", "-1"], vec!["1", "1"]]);
        let f = example1(1, 2).unwrap();
        let d: Vec<Vec<String>> = f.members.iter().map(diag).collect();
        assert_eq!(d, vec![vec!["-2"], vec!["-1"], vec!["1"], vec!["2"]]);
        let f = example1(3, 2).unwrap();
        assert_eq!(f.members.len(), 16);
        assert!(f.members.iter().all(|m| m.is_nonsingular().unwrap()));
        assert!(example1(0, 1).is_err());
        assert!(example1(2, 0).is_err());
    }

    #[test]
    fn example1_count_examples() {
        let r = verify_example1_counts(&example1(2, 1).unwrap()).unwrap();
        assert_eq!((r.nonsingular_ordered_pairs, r.expected), (4, 4));
        let r = verify_example1_counts(&example1(1, 2).unwrap()).unwrap();
        assert_eq!(r.nonsingular_ordered_pairs, 12);
        let r = verify_example1_counts(&example1(3, 3).unwrap()).unwrap();
        assert_eq!((r.size, r.nonsingular_ordered_pairs), (24, 120));
        assert!(r.holds);
    }

    #[test]
    fn embedded_identity_sums() {
        let a = embedded_diagonal(2, &set(2, &[1]), &set(2, &[1]), 1).unwrap();
        let b = embedded_diagonal(2, &set(2, &[2]), &set(2, &[2]), 1).unwrap();
        let c = embedded_diagonal(2, &set(2, &[2]), &set(2, &[1]), 1).unwrap();
        assert_eq!(a.add(&b).unwrap(), Matrix::identity(FieldSpec::Rationals, 2));
        let bad = a.add(&c).unwrap();
        assert_eq!(bad, Matrix::from_rows(FieldSpec::Rationals, &[vec![1, 0], vec![1, 0]]).unwrap());
        assert_eq!(bad.det().unwrap(), Scalar::zero(FieldSpec::Rationals));
    }

    #[test]
    fn example2_sizes_and_errors() {
        let f = example2(2, 1, Example2Variant::IdentityOnly).unwrap();
        assert_eq!(f.left.len(), 2);
        let f = example2(4, 1, Example2Variant::IdentityOnly).unwrap();
        assert_eq!(f.left.len(), 18);
        let f = example2(2, 3, Example2Variant::Extended).unwrap();
        assert_eq!(f.left.len(), 12);
        assert!(matches!(example2(3, 1, Example2Variant::Extended), Err(Error::OddDimension(3))));
    }

    #[test]
    fn example2_count_examples() {
        let r = verify_example2_counts(&example2(2, 1, Example2Variant::Extended).unwrap()).unwrap();
        assert!(r.per_vertex_nonsingular_partners.iter().all(|&c| c == 2));
        assert!(r.holds);
        let r = verify_example2_counts(&example2(4, 1, Example2Variant::IdentityOnly).unwrap()).unwrap();
        assert_eq!(r.n, 18);
        assert!(r.diagonal_pattern_holds && r.holds);
        let r = verify_example2_counts(&example2(2, 3, Example2Variant::Extended).unwrap()).unwrap();
        assert!(r.per_vertex_nonsingular_partners.iter().all(|&c| c == 6));
        assert_eq!(r.edge_count, 6 * 12);
    }
}
