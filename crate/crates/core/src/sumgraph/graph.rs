use std::fmt::Write as _;

use crate::{Error, Result};

/// Fixed-width bitset over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(n: usize) -> Self {
        Bitset { words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect(&self, other: &Bitset) -> Bitset {
        Bitset { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
    }

    pub fn difference_with(&mut self, other: &Bitset) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// A simple undirected loop-free graph on `0..n` with bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Bitset>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { n, adj: vec![Bitset::new(n); n] }
    }

    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j, "loops are not allowed");
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Edges `(i, j)`, `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.adj[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// The subgraph induced on `vertices`, relabelled `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        SimpleGraph::from_fn(vertices.len(), |a, b| self.has_edge(vertices[a], vertices[b]))
    }

    /// Plain-text edge list, one `i j` line per edge, 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{} {}", i + 1, j + 1);
        }
        out
    }

    pub fn from_edge_list(n: usize, text: &str) -> Result<Self> {
        let mut g = Self::new(n);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("edge list line {}: '{line}'", lineno + 1));
            let mut it = line.split_whitespace().map(|t| t.parse::<usize>());
            let (Some(Ok(i)), Some(Ok(j)), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad());
            };
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(bad());
            }
            g.add_edge(i - 1, j - 1);
        }
        Ok(g)
    }
}
