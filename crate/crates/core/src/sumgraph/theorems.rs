use serde::Serialize;

use super::clique::{self, Clique, DEFAULT_NODE_BUDGET};
use super::graph::SimpleGraph;
use super::matching::{maximum_bipartite_matching, BipartiteSumGraph};
use crate::algebra::{FieldSpec, Matrix};
use crate::detsum::{build_h_matrix, HMatrix};
use crate::{Error, Result};

/// `G*ₙ`: `{i, j}` is an edge iff `h_ij = h_ji = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryGraph(pub SimpleGraph);

impl AuxiliaryGraph {
    pub fn graph(&self) -> &SimpleGraph {
        &self.0
    }
}

pub fn build_auxiliary_graph(h: &HMatrix) -> AuxiliaryGraph {
    AuxiliaryGraph(SimpleGraph::from_fn(h.n(), |i, j| h.is_zero_at(i, j) && h.is_zero_at(j, i)))
}

/// Maximum clique of the auxiliary graph (or the first one of size `cap`),
/// with the default node budget.
pub fn exact_max_clique(g: &AuxiliaryGraph, cap: Option<usize>) -> Result<Clique> {
    clique::branch_and_bound(&g.0, cap, DEFAULT_NODE_BUDGET)
}

/// True iff `H[T×T]` is diagonal with a nonzero diagonal, which certifies
/// `rank(H) ≥ |T|`. Indices are 0-based.
pub fn diagonal_submatrix_check(h: &HMatrix, t: &[usize]) -> bool {
    t.iter().all(|&i| i < h.n() && !h.is_zero_at(i, i))
        && t.iter().enumerate().all(|(a, &i)| {
            t[a + 1..].iter().all(|&j| i != j && h.is_zero_at(i, j) && h.is_zero_at(j, i))
        })
}

/// The largest `T` passing [`diagonal_submatrix_check`]: a maximum clique of
/// `G*ₙ` restricted to indices with `h_ii ≠ 0`.
pub fn largest_diagonal_block(h: &HMatrix, budget: u64) -> Result<Vec<usize>> {
    let aux = build_auxiliary_graph(h);
    let live: Vec<usize> = (0..h.n()).filter(|&i| !h.is_zero_at(i, i)).collect();
    let c = clique::branch_and_bound(&aux.0.induced(&live), None, budget)?;
    let mut t: Vec<usize> = c.vertices.iter().map(|&v| live[v]).collect();
    t.sort_unstable();
    debug_assert!(diagonal_submatrix_check(h, &t));
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueRankReport {
    pub n: usize,
    pub rank: usize,
    pub block: Vec<usize>,
    pub block_size: usize,
    pub holds: bool,
}

/// `|T| ≤ rank(H)` for the largest diagonal block `T`.
pub fn clique_rank_link(h: &HMatrix) -> Result<CliqueRankReport> {
    let block = largest_diagonal_block(h, DEFAULT_NODE_BUDGET)?;
    let rank = h.rank();
    Ok(CliqueRankReport {
        n: h.n(),
        rank,
        block_size: block.len(),
        holds: block.len() <= rank && diagonal_submatrix_check(h, &block),
        block,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub matching_size: usize,
    pub perfect_matching: bool,
    /// Vertices per side of the graph the count was taken on: `n` with a
    /// perfect matching, otherwise the matching size.
    pub checked_n: usize,
    /// Ordered nonsingular pairs `(i, j)`, diagonal included.
    pub edge_count: usize,
    /// `⌈checked_n² / 4^k⌉`
    pub lower_bound: u128,
    pub holds: bool,
}

fn ceil_div(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

pub(crate) fn four_pow(k: usize) -> u128 {
    1u128 << (2 * k)
}

/// Checks `edges ≥ n²/4^k` on the nonsingular-sum graph. Without a perfect
/// matching the graph is first restricted to the vertices of a maximum
/// matching.
pub fn verify_theorem2(family_a: &[Matrix], family_b: &[Matrix]) -> Result<Theorem2Report> {
    let h = build_h_matrix(family_a, family_b)?;
    theorem2_on(&h)
}

pub fn theorem2_on(h: &HMatrix) -> Result<Theorem2Report> {
    if !h.field().characteristic_ok() {
        return Err(Error::CharacteristicTwo);
    }
    let g = BipartiteSumGraph::from_h(h);
    let matching = maximum_bipartite_matching(&g);
    let n = h.n();
    let perfect = matching.len() == n;
    let edge_count = if perfect {
        g.edge_count()
    } else {
        let left: Vec<usize> = matching.pairs.iter().map(|p| p.0).collect();
        let right: Vec<usize> = matching.pairs.iter().map(|p| p.1).collect();
        left.iter().map(|&i| right.iter().filter(|&&j| g.has_edge(i, j)).count()).sum()
    };
    let checked_n = matching.len();
    let m2 = (checked_n as u128).pow(2);
    let quarter = four_pow(h.k());
    Ok(Theorem2Report {
        field: h.field(),
        n,
        k: h.k(),
        matching_size: matching.len(),
        perfect_matching: perfect,
        checked_n,
        edge_count,
        lower_bound: ceil_div(m2, quarter),
        holds: (edge_count as u128) * quarter >= m2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub size: usize,
    pub diagonal_is_perfect_matching: bool,
    pub nonsingular_ordered_pairs: usize,
    pub theorem2: Theorem2Report,
    pub holds: bool,
}

/// The perfect-matching count with `M₁ = M₂ = family`; every member must be nonsingular so
/// the diagonal `(A, A)` is a perfect matching.
pub fn verify_theorem1(family: &[Matrix]) -> Result<Theorem1Report> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    if !first.field().characteristic_ok() {
        return Err(Error::CharacteristicTwo);
    }
    for (index, m) in family.iter().enumerate() {
        if !m.is_square() {
            return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
        }
        if !m.is_nonsingular()? {
            return Err(Error::SingularMember { index });
        }
    }
    let h = build_h_matrix(family, family)?;
    let diagonal = (0..h.n()).all(|i| !h.is_zero_at(i, i));
    let theorem2 = theorem2_on(&h)?;
    Ok(Theorem1Report {
        size: family.len(),
        diagonal_is_perfect_matching: diagonal,
        nonsingular_ordered_pairs: theorem2.edge_count,
        holds: diagonal && theorem2.perfect_matching && theorem2.holds,
        theorem2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn h_from(values: &[Vec<i64>]) -> HMatrix {
        // with 1x1 families and b = 0, h_ij = a_i
        let fam_a: Vec<Matrix> = values.iter().map(|r| Matrix::from_rows(q(), &[vec![r[0]]]).unwrap()).collect();
        let fam_b = vec![Matrix::zero(q(), 1, 1); values.len()];
        build_h_matrix(&fam_a, &fam_b).unwrap()
    }

    #[test]
    fn aux_graph_needs_both_zeros() {
        // h = [[1, 0], [3, 2]]
        let a = vec![Matrix::from_rows(q(), &[vec![1]]).unwrap(), Matrix::from_rows(q(), &[vec![3]]).unwrap()];
        let b = vec![Matrix::from_rows(q(), &[vec![0]]).unwrap(), Matrix::from_rows(q(), &[vec![-1]]).unwrap()];
        let h = build_h_matrix(&a, &b).unwrap();
        assert_eq!(h.get(0, 1), Scalar::zero(q()));
        assert!(!h.get(1, 0).is_zero());
        assert_eq!(build_auxiliary_graph(&h).0.edge_count(), 0);
    }

    #[test]
    fn aux_graph_without_zero_sums_is_edgeless() {
        let h = h_from(&[vec![1], vec![2], vec![5]]);
        assert_eq!(build_auxiliary_graph(&h).0.edge_count(), 0);
    }

    #[test]
    fn diagonal_check_examples() {
        let a: Vec<Matrix> = [1, -1].iter().map(|&v| Matrix::from_rows(q(), &[vec![v]]).unwrap()).collect();
        let h = build_h_matrix(&a, &a).unwrap();
        // h = [[2, 0], [0, -2]]
        assert!(diagonal_submatrix_check(&h, &[0]));
        assert!(diagonal_submatrix_check(&h, &[0, 1]));
        let z = vec![Matrix::zero(q(), 1, 1)];
        let hz = build_h_matrix(&z, &z).unwrap();
        assert!(!diagonal_submatrix_check(&hz, &[0]));
    }

    #[test]
    fn theorem1_rejects_singular_and_char_two() {
        let good = Matrix::identity(q(), 2);
        let bad = Matrix::zero(q(), 2, 2);
        assert!(matches!(
            verify_theorem1(&[good.clone(), bad]),
            Err(Error::SingularMember { index: 1 })
        ));
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(verify_theorem1(&[Matrix::identity(f2, 2)]), Err(Error::CharacteristicTwo)));
        let r = verify_theorem1(&[good]).unwrap();
        assert!(r.holds);
        assert_eq!(r.nonsingular_ordered_pairs, 1);
    }

    #[test]
    fn theorem2_degrades_to_matching() {
        // every left vertex sees only right vertex 0
        let a: Vec<Matrix> = [1, 1, 1].iter().map(|&v| Matrix::from_rows(q(), &[vec![v]]).unwrap()).collect();
        let b: Vec<Matrix> = [0, -1, -1].iter().map(|&v| Matrix::from_rows(q(), &[vec![v]]).unwrap()).collect();
        let r = verify_theorem2(&a, &b).unwrap();
        assert!(!r.perfect_matching);
        assert_eq!((r.matching_size, r.checked_n, r.edge_count), (1, 1, 1));
        assert!(r.holds);
    }
}
