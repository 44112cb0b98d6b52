//! Exact minimum dominating sets by branch and bound.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::solver::{SolveLimits, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingWitness {
    pub set: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationSolution {
    pub status: Status,
    pub value: Option<usize>,
    pub witness: Option<DominatingWitness>,
    pub nodes_expanded: u64,
}

impl DominationSolution {
    pub fn optimum(&self) -> Option<(usize, &DominatingWitness)> {
        match (self.status, self.value, &self.witness) {
            (Status::Optimal, Some(v), Some(w)) => Some((v, w)),
            _ => None,
        }
    }
}

/// First vertex not dominated by `set`, if any.
pub fn undominated_vertex(g: &Graph, set: &[VertexId]) -> Option<VertexId> {
    let mut dominated = vec![false; g.n()];
    for &v in set {
        dominated[v] = true;
        for &w in g.neighbors(v) {
            dominated[w] = true;
        }
    }
    dominated.iter().position(|&d| !d)
}

pub fn is_dominating(g: &Graph, set: &[VertexId]) -> bool {
    set.iter().all(|&v| v < g.n()) && undominated_vertex(g, set).is_none()
}

enum Search {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Brancher<'g> {
    g: &'g Graph,
    /// Closed neighborhoods, sorted.
    closed: Vec<Vec<VertexId>>,
    max_closed: usize,
    dominated_by: Vec<u32>,
    undominated: usize,
    chosen: Vec<VertexId>,
    nodes: u64,
    budget: u64,
    deadline: Option<Instant>,
}

impl Brancher<'_> {
    fn toggle(&mut self, v: VertexId, add: bool) {
        for i in 0..self.closed[v].len() {
            let w = self.closed[v][i];
            if add {
                if self.dominated_by[w] == 0 {
                    self.undominated -= 1;
                }
                self.dominated_by[w] += 1;
            } else {
                self.dominated_by[w] -= 1;
                if self.dominated_by[w] == 0 {
                    self.undominated += 1;
                }
            }
        }
    }

    fn run(&mut self, picks_left: usize) -> Search {
        if self.undominated == 0 {
            return Search::Found;
        }
        self.nodes += 1;
        if self.nodes > self.budget
            || (self.nodes.is_multiple_of(1024)
                && self.deadline.is_some_and(|d| Instant::now() >= d))
        {
            return Search::OutOfBudget;
        }
        // Each pick dominates at most max_closed vertices.
        if picks_left * self.max_closed < self.undominated {
            return Search::Exhausted;
        }
        let target = (0..self.g.n())
            .filter(|&v| self.dominated_by[v] == 0)
            .min_by_key(|&v| (self.closed[v].len(), v))
            .expect("some vertex is undominated");
        for i in 0..self.closed[target].len() {
            let w = self.closed[target][i];
            self.toggle(w, true);
            self.chosen.push(w);
            match self.run(picks_left - 1) {
                Search::Exhausted => {}
                other => return other,
            }
            self.chosen.pop();
            self.toggle(w, false);
        }
        Search::Exhausted
    }
}

/// Exact domination number `γ(G)` with a minimum dominating set.
///
/// Sizes are tried upward; for each size the search branches on the
/// undominated vertex with the smallest closed neighborhood.
pub fn dominating_number(g: &Graph, limits: &SolveLimits) -> Result<DominationSolution> {
    limits.validate()?;
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let closed: Vec<Vec<VertexId>> = (0..g.n())
        .map(|v| {
            let mut c = g.neighbors(v).to_vec();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    let max_closed = closed.iter().map(Vec::len).max().unwrap_or(1);
    let mut b = Brancher {
        g,
        closed,
        max_closed,
        dominated_by: vec![0; g.n()],
        undominated: g.n(),
        chosen: Vec::new(),
        nodes: 0,
        budget: limits.node_budget,
        deadline: limits.time_budget.map(|d| Instant::now() + d),
    };
    for k in 1..=g.n() {
        match b.run(k) {
            Search::Found => {
                let mut set = b.chosen.clone();
                set.sort_unstable();
                return Ok(DominationSolution {
                    status: Status::Optimal,
                    value: Some(k),
                    witness: Some(DominatingWitness { set }),
                    nodes_expanded: b.nodes,
                });
            }
            Search::Exhausted => {}
            Search::OutOfBudget => {
                return Ok(DominationSolution {
                    status: Status::Indeterminate,
                    value: None,
                    witness: None,
                    nodes_expanded: b.nodes,
                })
            }
        }
    }
    Err(Error::Consistency("V always dominates".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use itertools::Itertools;

    fn gamma(g: &Graph) -> usize {
        let s = dominating_number(g, &SolveLimits::default()).unwrap();
        let (v, w) = s.optimum().unwrap();
        assert!(is_dominating(g, &w.set));
        assert_eq!(w.set.len(), v);
        v
    }

    /// Smallest dominating subset by plain enumeration.
    fn brute_gamma(g: &Graph) -> usize {
        (1..=g.n())
            .find(|&k| (0..g.n()).combinations(k).any(|s| is_dominating(g, &s)))
            .unwrap()
    }

    #[test]
    fn named_examples() {
        assert_eq!(gamma(&generators::complete(5)), 1);
        assert_eq!(gamma(&generators::cycle(4)), 2);
        assert_eq!(gamma(&generators::path(3)), 1);
        let s = dominating_number(&generators::path(3), &SolveLimits::default()).unwrap();
        assert_eq!(s.witness.unwrap().set, vec![1]);
    }

    #[test]
    fn matches_brute_force_on_catalogue() {
        for g in generators::connected_catalogue(6).unwrap() {
            assert_eq!(gamma(&g), brute_gamma(&g));
        }
    }

    #[test]
    fn helpers() {
        assert!(is_dominating(&generators::star(3), &[0]));
        assert_eq!(undominated_vertex(&generators::path(4), &[0]), Some(2));
        assert!(!is_dominating(&generators::path(2), &[7]));
    }

    #[test]
    fn budget_exhaustion() {
        let limits = SolveLimits {
            node_budget: 1,
            ..SolveLimits::default()
        };
        let s = dominating_number(&generators::cycle(9), &limits).unwrap();
        assert_eq!(s.status, Status::Indeterminate);
        assert!(dominating_number(&Graph::new(0, []).unwrap(), &SolveLimits::default()).is_err());
    }
}
