//! Slow, obviously-correct reference implementations.

#![allow(dead_code)]

use nss_core::algebra::{Matrix, Scalar};
use nss_core::sumgraph::SimpleGraph;

/// Laplace expansion along the first row, using only scalar arithmetic.
pub fn cofactor_det(m: &Matrix) -> Scalar {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let cells: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    let cols: Vec<usize> = (0..n).collect();
    laplace(&cells, 0, &cols, &Scalar::one(m.field()))
}

fn laplace(cells: &[Vec<Scalar>], row: usize, cols: &[usize], one: &Scalar) -> Scalar {
    if cols.is_empty() {
        return one.clone();
    }
    let mut acc = one.sub(one).unwrap();
    for (pos, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = cells[row][c].mul(&laplace(cells, row + 1, &rest, one)).unwrap();
        acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.unwrap();
    }
    acc
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Largest `r` with a nonzero `r x r` minor.
pub fn minor_rank(m: &Matrix) -> usize {
    let field = m.field();
    for r in (1..=m.rows().min(m.cols())).rev() {
        for rows in subsets(m.rows(), r) {
            for cols in subsets(m.cols(), r) {
                let cells = rows.iter().flat_map(|&i| cols.iter().map(move |&j| m.get(i, j))).collect();
                let sub = Matrix::from_scalars(field, r, r, cells).unwrap();
                if !cofactor_det(&sub).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

/// Maximum bipartite matching by dynamic programming over the set of used
/// right vertices.
pub fn brute_bipartite_matching(n: usize, edge: impl Fn(usize, usize) -> bool) -> usize {
    let mut best = vec![None::<usize>; 1 << n];
    best[0] = Some(0);
    for i in 0..n {
        let mut next = best.clone();
        for used in 0..1usize << n {
            let Some(size) = best[used] else { continue };
            for j in 0..n {
                if used >> j & 1 == 0 && edge(i, j) {
                    let slot = &mut next[used | 1 << j];
                    *slot = Some(slot.map_or(size + 1, |s| s.max(size + 1)));
                }
            }
        }
        best = next;
    }
    best.into_iter().flatten().max().unwrap()
}

pub fn brute_min_vertex_cover(g: &SimpleGraph) -> usize {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u32..1 << n)
        .filter(|s| edges.iter().all(|&(i, j)| s >> i & 1 == 1 || s >> j & 1 == 1))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// Checks every vertex subset; `n ≤ 20`.
pub fn brute_clique_number(g: &SimpleGraph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    let adj: Vec<u32> = (0..n).map(|v| (0..n).filter(|&u| g.has_edge(v, u)).map(|u| 1 << u).sum()).collect();
    let mut best = 0;
    for s in 0u32..1 << n {
        let size = s.count_ones() as usize;
        if size > best && (0..n).all(|v| s >> v & 1 == 0 || s & !(1 << v) & !adj[v] == 0) {
            best = size;
        }
    }
    best
}

pub fn pascal(n: usize, k: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// `det(A_i + B_j) ≠ 0` by cofactor expansion.
pub fn nonsingular_sum(a: &Matrix, b: &Matrix) -> bool {
    !cofactor_det(&a.add(b).unwrap()).is_zero()
}

/// Maximum matching of a general graph: the lowest unmatched vertex is
/// either left out or matched to each free neighbour in turn.
pub fn brute_general_matching(g: &SimpleGraph) -> usize {
    fn go(g: &SimpleGraph, free: u32) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = go(g, rest);
        for u in 0..g.n() {
            if rest >> u & 1 == 1 && g.has_edge(v, u) {
                best = best.max(1 + go(g, rest & !(1 << u)));
            }
        }
        best
    }
    go(g, ((1u64 << g.n()) - 1) as u32)
}
