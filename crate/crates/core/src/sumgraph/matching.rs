use std::collections::VecDeque;

use serde::Serialize;

use super::graph::SimpleGraph;
use crate::algebra::{FieldSpec, Matrix};
use crate::detsum::HMatrix;
use crate::Result;

/// `G(M₁, M₂)`: left vertex `i` and right vertex `j` are adjacent iff
/// `det(A_i + B_j) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSumGraph {
    n: usize,
    field: FieldSpec,
    adjacency: Vec<bool>,
}

impl BipartiteSumGraph {
    pub fn from_h(h: &HMatrix) -> Self {
        let n = h.n();
        let adjacency = (0..n * n).map(|idx| !h.is_zero_at(idx / n, idx % n)).collect();
        BipartiteSumGraph { n, field: h.field(), adjacency }
    }

    /// A bipartite graph given directly by its `n x n` adjacency pattern.
    pub fn from_adjacency(n: usize, field: FieldSpec, edge: impl Fn(usize, usize) -> bool) -> Self {
        let adjacency = (0..n * n).map(|idx| edge(idx / n, idx % n)).collect();
        BipartiteSumGraph { n, field, adjacency }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// False over characteristic 2, where `A + A = 0` and the diagonal
    /// argument breaks down.
    pub fn characteristic_ok(&self) -> bool {
        self.field.characteristic_ok()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    /// Ordered pairs `(i, j)`, diagonal included.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().filter(|&&e| e).count()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has_edge(i, j))
    }
}

pub fn build_bipartite_graph(family_a: &[Matrix], family_b: &[Matrix]) -> Result<BipartiteSumGraph> {
    Ok(BipartiteSumGraph::from_h(&crate::detsum::build_h_matrix(family_a, family_b)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingKind {
    Bipartite,
    General,
}

/// Vertex-disjoint edges. Bipartite pairs are `(left, right)`; general pairs
/// are `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub kind: MatchingKind,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The matched vertices, which cover every edge when the matching is
    /// maximal.
    pub fn vertex_cover(&self) -> VertexCoverCertificate {
        let mut vertices: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        VertexCoverCertificate { size: vertices.len(), vertices }
    }

    /// Pairwise disjoint, and every pair an edge of `g`.
    pub fn is_valid_in(&self, g: &SimpleGraph) -> bool {
        let mut seen = vec![false; g.n()];
        self.pairs.iter().all(|&(a, b)| {
            let fresh = !seen[a] && !seen[b] && a != b;
            seen[a] = true;
            seen[b] = true;
            fresh && g.has_edge(a, b)
        })
    }

    pub fn is_valid_bipartite(&self, g: &BipartiteSumGraph) -> bool {
        let mut left = vec![false; g.n()];
        let mut right = vec![false; g.n()];
        self.pairs.iter().all(|&(i, j)| {
            let fresh = !left[i] && !right[j];
            left[i] = true;
            right[j] = true;
            fresh && g.has_edge(i, j)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCoverCertificate {
    pub vertices: Vec<usize>,
    pub size: usize,
}

impl VertexCoverCertificate {
    pub fn covers(&self, g: &SimpleGraph) -> bool {
        let mut inside = vec![false; g.n()];
        for &v in &self.vertices {
            inside[v] = true;
        }
        g.edges().all(|(i, j)| inside[i] || inside[j])
    }
}

const FREE: usize = usize::MAX;

/// Maximum-cardinality bipartite matching by Hopcroft–Karp. On return no
/// augmenting path exists.
pub fn maximum_bipartite_matching(g: &BipartiteSumGraph) -> Matching {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| g.neighbors(i).collect()).collect();
    let mut match_left = vec![FREE; n];
    let mut match_right = vec![FREE; n];
    let mut dist = vec![0usize; n];
    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for i in 0..n {
            if match_left[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                match match_right[j] {
                    FREE => found = true,
                    i2 if dist[i2] == usize::MAX => {
                        dist[i2] = dist[i] + 1;
                        queue.push_back(i2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        for i in 0..n {
            if match_left[i] == FREE {
                augment(i, &adj, &mut match_left, &mut match_right, &mut dist);
            }
        }
    }
    let pairs = (0..n).filter(|&i| match_left[i] != FREE).map(|i| (i, match_left[i])).collect();
    Matching { pairs, kind: MatchingKind::Bipartite }
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &j in &adj[i] {
        let next = match_right[j];
        if next == FREE || (dist[next] == dist[i] + 1 && augment(next, adj, match_left, match_right, dist)) {
            match_left[i] = j;
            match_right[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// Inclusion-maximal matching from a lexicographic scan of the edges.
pub fn greedy_maximal_matching(g: &SimpleGraph) -> Matching {
    let mut used = vec![false; g.n()];
    let mut pairs = Vec::new();
    for (i, j) in g.edges() {
        if !used[i] && !used[j] {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
    }
    Matching { pairs, kind: MatchingKind::General }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn hopcroft_karp_simple_cases() {
        let id = BipartiteSumGraph::from_adjacency(6, q(), |i, j| i == j);
        assert_eq!(maximum_bipartite_matching(&id).len(), 6);
        let empty = BipartiteSumGraph::from_adjacency(4, q(), |_, _| false);
        assert!(maximum_bipartite_matching(&empty).is_empty());
        let full = BipartiteSumGraph::from_adjacency(5, q(), |_, _| true);
        let m = maximum_bipartite_matching(&full);
        assert_eq!(m.len(), 5);
        assert!(m.is_valid_bipartite(&full));
    }

    #[test]
    fn hopcroft_karp_needs_augmenting_path() {
        // left 0 -> {0,1}, left 1 -> {0}: greedy 0-0 must be undone
        let g = BipartiteSumGraph::from_adjacency(2, q(), |i, j| (i, j) != (1, 1));
        let m = maximum_bipartite_matching(&g);
        assert_eq!(m.len(), 2);
        assert!(m.is_valid_bipartite(&g));
    }

    #[test]
    fn greedy_examples() {
        let empty = SimpleGraph::new(4);
        let m = greedy_maximal_matching(&empty);
        assert!(m.is_empty());
        assert_eq!(m.vertex_cover().size, 0);

        let mut single = SimpleGraph::new(2);
        single.add_edge(0, 1);
        let m = greedy_maximal_matching(&single);
        assert_eq!(m.pairs, vec![(0, 1)]);
        assert_eq!(m.vertex_cover().vertices, vec![0, 1]);

        let mut path = SimpleGraph::new(3);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        let m = greedy_maximal_matching(&path);
        assert_eq!(m.pairs, vec![(0, 1)]);
        let cover = m.vertex_cover();
        assert_eq!(cover.vertices, vec![0, 1]);
        assert!(cover.covers(&path));
    }
}
