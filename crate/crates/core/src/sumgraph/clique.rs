//! Exact maximum-clique search.
//!
//! Three strategies, sharing nothing but the graph:
//!
//! * [`branch_and_bound`]: greedy-colouring bounds over a degree ordering.
//! * [`russian_doll`]: Östergård-style search over growing vertex suffixes.
//! * [`exhaustive`]: enumerates every clique once, no pruning.

use serde::Serialize;

use super::graph::{Bitset, SimpleGraph};
use crate::{Error, Result};

/// Branch-node budget used when the caller does not choose one.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clique {
    /// Sorted vertex indices (0-based).
    pub vertices: Vec<usize>,
    /// Search nodes expanded to find and prove it.
    pub nodes: u64,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// A search that may have stopped at its budget. The clique is always a
/// verified clique; it is maximum only when `complete`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub clique: Clique,
    pub complete: bool,
    pub budget: u64,
}

impl Outcome {
    pub fn into_result(self) -> Result<Clique> {
        if self.complete {
            Ok(self.clique)
        } else {
            Err(Error::BudgetExceeded { limit: self.budget, best: Some(self.clique.size()) })
        }
    }
}

struct Budget {
    limit: u64,
    used: u64,
}

/// Marker for an exhausted budget, unwound through `?`.
struct OutOfBudget;

impl Budget {
    fn tick(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.used += 1;
        if self.used > self.limit {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }
}

type Step = std::result::Result<(), OutOfBudget>;

/// Vertices by decreasing degree, ties by index.
fn degree_order(g: &SimpleGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn finish(g: &SimpleGraph, mut vertices: Vec<usize>, budget: &Budget, step: Step) -> Outcome {
    vertices.sort_unstable();
    assert!(g.is_clique(&vertices), "search returned a non-clique");
    Outcome {
        clique: Clique { vertices, nodes: budget.used.min(budget.limit) },
        complete: step.is_ok(),
        budget: budget.limit,
    }
}

/// Maximum clique by colouring-bounded branch and bound. With `cap`, stops at
/// the first clique of that size.
pub fn branch_and_bound(g: &SimpleGraph, cap: Option<usize>, budget: u64) -> Result<Clique> {
    branch_and_bound_outcome(g, cap, budget).into_result()
}

pub fn branch_and_bound_outcome(g: &SimpleGraph, cap: Option<usize>, budget: u64) -> Outcome {
    let order = degree_order(g);
    let relabelled = g.induced(&order);
    let mut search = Bnb {
        g: &relabelled,
        best: Vec::new(),
        current: Vec::new(),
        cap: cap.unwrap_or(usize::MAX),
        budget: Budget { limit: budget, used: 0 },
    };
    let step = if g.n() > 0 { search.expand(Bitset::full(g.n())) } else { Ok(()) };
    let vertices = search.best.iter().map(|&v| order[v]).collect();
    finish(g, vertices, &search.budget, step)
}

struct Bnb<'a> {
    g: &'a SimpleGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    cap: usize,
    budget: Budget,
}

impl Bnb<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.cap
    }

    /// Greedy sequential colouring of `p`; returns vertices with their colour
    /// numbers, colours non-decreasing.
    fn colour(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut candidates = uncoloured.clone();
            while let Some(v) = candidates.first() {
                candidates.remove(v);
                candidates.difference_with(self.g.neighbors(v));
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bitset) -> Step {
        self.budget.tick()?;
        let coloured = self.colour(&p);
        for &(v, colour) in coloured.iter().rev() {
            if self.current.len() + colour <= self.best.len() || self.done() {
                return Ok(());
            }
            self.current.push(v);
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            let next = p.intersect(self.g.neighbors(v));
            if !next.is_empty() && !self.done() {
                self.expand(next)?;
            }
            self.current.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// Maximum clique by Russian-doll search: for `i = n-1, …, 0` compute the
/// clique number of the subgraph on `{i, …, n-1}`, pruning with the answers
/// already found for the smaller suffixes.
pub fn russian_doll(g: &SimpleGraph, budget: u64) -> Result<Clique> {
    russian_doll_outcome(g, budget).into_result()
}

pub fn russian_doll_outcome(g: &SimpleGraph, budget: u64) -> Outcome {
    let n = g.n();
    let mut search = Doll {
        g,
        suffix_best: vec![0; n],
        best: Vec::new(),
        current: Vec::new(),
        found: false,
        budget: Budget { limit: budget, used: 0 },
    };
    let mut step = Ok(());
    for i in (0..n).rev() {
        let mut p = g.neighbors(i).clone();
        for j in 0..=i {
            p.remove(j);
        }
        search.found = false;
        search.current = vec![i];
        step = search.expand(p);
        if step.is_err() {
            break;
        }
        search.suffix_best[i] = search.best.len();
    }
    let best = std::mem::take(&mut search.best);
    finish(g, best, &search.budget, step)
}

struct Doll<'a> {
    g: &'a SimpleGraph,
    suffix_best: Vec<usize>,
    best: Vec<usize>,
    current: Vec<usize>,
    found: bool,
    budget: Budget,
}

impl Doll<'_> {
    fn expand(&mut self, mut p: Bitset) -> Step {
        self.budget.tick()?;
        if p.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
                self.found = true;
            }
            return Ok(());
        }
        while let Some(j) = p.first() {
            if self.current.len() + p.count() <= self.best.len()
                || self.current.len() + self.suffix_best[j] <= self.best.len()
            {
                return Ok(());
            }
            p.remove(j);
            self.current.push(j);
            let next = p.intersect(self.g.neighbors(j));
            self.expand(next)?;
            self.current.pop();
            if self.found {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Visits every clique exactly once (extending only by larger indices) and
/// keeps the first largest one. Each visited clique costs one budget unit.
pub fn exhaustive(g: &SimpleGraph, budget: u64) -> Result<Clique> {
    exhaustive_outcome(g, budget).into_result()
}

pub fn exhaustive_outcome(g: &SimpleGraph, budget: u64) -> Outcome {
    fn walk(
        g: &SimpleGraph,
        current: &mut Vec<usize>,
        p: Bitset,
        best: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> Step {
        budget.tick()?;
        if current.len() > best.len() {
            *best = current.clone();
        }
        for v in p.iter() {
            let mut next = p.intersect(g.neighbors(v));
            for u in next.clone().iter().filter(|&u| u <= v) {
                next.remove(u);
            }
            current.push(v);
            walk(g, current, next, best, budget)?;
            current.pop();
        }
        Ok(())
    }
    let mut best = Vec::new();
    let mut budget = Budget { limit: budget, used: 0 };
    let step = walk(g, &mut Vec::new(), Bitset::full(g.n()), &mut best, &mut budget);
    finish(g, best, &budget, step)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SimpleGraph {
        let mut g = SimpleGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    #[test]
    fn complete_and_edgeless() {
        let k4 = SimpleGraph::complete(4);
        assert_eq!(branch_and_bound(&k4, None, DEFAULT_NODE_BUDGET).unwrap().size(), 4);
        assert_eq!(russian_doll(&k4, DEFAULT_NODE_BUDGET).unwrap().size(), 4);
        assert_eq!(exhaustive(&k4, DEFAULT_NODE_BUDGET).unwrap().size(), 4);
        let e = SimpleGraph::new(5);
        assert_eq!(branch_and_bound(&e, None, DEFAULT_NODE_BUDGET).unwrap().size(), 1);
        assert_eq!(russian_doll(&e, DEFAULT_NODE_BUDGET).unwrap().size(), 1);
        let none = SimpleGraph::new(0);
        assert_eq!(branch_and_bound(&none, None, 10).unwrap().size(), 0);
        assert_eq!(russian_doll(&none, 10).unwrap().size(), 0);
    }

    #[test]
    fn petersen_is_triangle_free() {
        let g = petersen();
        assert_eq!(branch_and_bound(&g, None, DEFAULT_NODE_BUDGET).unwrap().size(), 2);
        assert_eq!(russian_doll(&g, DEFAULT_NODE_BUDGET).unwrap().size(), 2);
        assert_eq!(exhaustive(&g, DEFAULT_NODE_BUDGET).unwrap().size(), 2);
    }

    #[test]
    fn cap_stops_early() {
        let g = SimpleGraph::complete(12);
        let c = branch_and_bound(&g, Some(3), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c.size(), 3);
    }

    #[test]
    fn budget_is_reported() {
        let g = SimpleGraph::from_fn(40, |i, j| (i * 7 + j * 3) % 5 != 0);
        match exhaustive(&g, 50) {
            Err(Error::BudgetExceeded { limit: 50, best: Some(_) }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
