//! Clique numbers of the sum graphs on `SL₂(𝔽_q)`.

use serde::Serialize;

use super::clique::{self, Outcome, DEFAULT_NODE_BUDGET};
use super::graph::SimpleGraph;
use crate::algebra::{FieldSpec, Matrix};
use crate::detsum::central_binomial_bound;
use crate::{Error, Result};

/// Largest `q` accepted; `|SL₂(𝔽_13)| = 2184`.
pub const MAX_SL2_Q: u64 = 13;

/// Visited-clique budget for the unpruned strategy; it is skipped, not
/// failed, when the budget runs out.
const EXHAUSTIVE_BUDGET: u64 = 2_000_000;

/// All 2x2 matrices over `𝔽_q` with determinant 1, entries `(a, b, c, d)`
/// in lexicographic order.
pub fn enumerate_sl2(q: u64) -> Result<Vec<Matrix>> {
    let field = FieldSpec::prime(q)?;
    if q > MAX_SL2_Q {
        return Err(Error::BudgetExceeded { limit: MAX_SL2_Q, best: None });
    }
    let q = q as i64;
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d - b * c).rem_euclid(q) == 1 {
                        out.push(Matrix::from_rows(field, &[vec![a, b], vec![c, d]])?);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub edges: usize,
    /// Vertices actually searched: the neighbourhood of the identity.
    pub searched_vertices: usize,
    /// Clique sizes from each strategy; `None` when it ran out of budget.
    pub branch_and_bound: Option<usize>,
    pub russian_doll: Option<usize>,
    pub exhaustive: Option<usize>,
    pub omega: Option<usize>,
    /// At least two strategies finished within budget.
    pub resolved: bool,
    /// Every strategy that finished agrees, and at least two finished.
    pub agree: bool,
    /// Size of the largest verified clique found by any strategy.
    pub lower_bound: usize,
    /// `|G| / ω` of the complementary graph, using its verified lower bound.
    pub upper_bound: usize,
    /// Sorted 1-based vertex indices into the enumeration order.
    pub certificate: Vec<usize>,
    pub certificate_verified: bool,
}

/// Both sum graphs are Cayley graphs (left multiplication preserves
/// `det(A + B)`), so some maximum clique contains the identity and it is
/// enough to search the identity's neighbourhood.
fn omega(g: &SimpleGraph, identity: usize, budget: u64) -> OmegaReport {
    let nbhd: Vec<usize> = g.neighbors(identity).iter().collect();
    let local = g.induced(&nbhd);
    let runs = [
        clique::branch_and_bound_outcome(&local, None, budget),
        clique::russian_doll_outcome(&local, budget),
        clique::exhaustive_outcome(&local, EXHAUSTIVE_BUDGET.min(budget)),
    ];
    let finished = |o: &Outcome| o.complete.then(|| o.clique.size() + 1);
    let sizes: Vec<usize> = runs.iter().filter_map(finished).collect();
    let agree = sizes.len() >= 2 && sizes.windows(2).all(|w| w[0] == w[1]);
    let best = runs.iter().max_by_key(|o| (o.clique.size(), o.complete)).expect("three runs");
    let mut certificate: Vec<usize> = best.clique.vertices.iter().map(|&v| nbhd[v]).collect();
    certificate.push(identity);
    certificate.sort_unstable();
    OmegaReport {
        edges: g.edge_count(),
        searched_vertices: nbhd.len(),
        branch_and_bound: finished(&runs[0]),
        russian_doll: finished(&runs[1]),
        exhaustive: finished(&runs[2]),
        omega: if agree { sizes.first().copied() } else { None },
        resolved: sizes.len() >= 2,
        agree,
        lower_bound: certificate.len(),
        upper_bound: g.n(),
        certificate_verified: g.is_clique(&certificate),
        certificate: certificate.iter().map(|v| v + 1).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueExperiment {
    pub q: u64,
    pub vertices: usize,
    /// Edges `{A, B}` with `det(A + B) ≠ 0`.
    pub omega_nonsingular_sum: OmegaReport,
    /// Edges `{A, B}` with `det(A + B) = 0`.
    pub omega_singular_sum: OmegaReport,
    /// A singular-sum clique makes `H` diagonal on it, so its size is at
    /// most `C(4, 2) = 6`.
    pub singular_rank_bound: u128,
    pub singular_within_rank_bound: bool,
}

pub fn clique_number_experiment(q: u64) -> Result<CliqueExperiment> {
    clique_number_experiment_with_budget(q, DEFAULT_NODE_BUDGET)
}

/// Like [`clique_number_experiment`], with an explicit per-strategy node
/// budget. Graphs whose search runs out still get verified bounds.
pub fn clique_number_experiment_with_budget(q: u64, budget: u64) -> Result<CliqueExperiment> {
    let field = FieldSpec::prime(q)?;
    if !field.characteristic_ok() {
        return Err(Error::CharacteristicTwo);
    }
    let group = enumerate_sl2(q)?;
    let n = group.len();
    let identity = group
        .iter()
        .position(|m| *m == Matrix::identity(field, 2))
        .expect("SL2 contains the identity");
    let mut singular = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let s = !group[i].add(&group[j])?.is_nonsingular()?;
            singular[i * n + j] = s;
            singular[j * n + i] = s;
        }
    }
    let nonsingular_graph = SimpleGraph::from_fn(n, |i, j| !singular[i * n + j]);
    let singular_graph = SimpleGraph::from_fn(n, |i, j| singular[i * n + j]);
    let mut omega_nonsingular_sum = omega(&nonsingular_graph, identity, budget);
    let mut omega_singular_sum = omega(&singular_graph, identity, budget);
    let bound = central_binomial_bound(2).central;

    // The two graphs are complements, so a clique of one is an independent
    // set of the other, and for vertex-transitive graphs ω·α ≤ |G|.
    omega_nonsingular_sum.upper_bound = n / omega_singular_sum.lower_bound;
    omega_singular_sum.upper_bound = (n / omega_nonsingular_sum.lower_bound).min(bound as usize);
    Ok(CliqueExperiment {
        q,
        vertices: n,
        singular_within_rank_bound: omega_singular_sum.omega.is_some_and(|w| w as u128 <= bound),
        singular_rank_bound: bound,
        omega_nonsingular_sum,
        omega_singular_sum,
    })
}
