//! Exact strong geodetic and geodetic solvers.
//!
//! Deciding whether a fixed set `S` admits a covering choice of geodesics is a
//! covering problem with a side constraint: every vertex outside `S` must lie
//! on some chosen path, and each pair of `S` contributes at most one path.
//! The search branches on the uncovered vertex with the fewest remaining
//! options (fail-first), so exhausting the tree is a proof that no choice
//! exists.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::{all_geodesics, GeodesicList, DEFAULT_GEODESIC_CAP};
use crate::graph::{bfs_distances, simplicial_vertices, DistanceRow, Graph, VertexId};
use crate::witness::{AssignedGeodesic, CoverWitness};

/// Candidate sets evaluated per parallel batch. Fixed so that statistics do
/// not depend on the thread count.
const BATCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveLimits {
    /// Geodesics materialized per pair before the pair is marked capped.
    pub geodesic_cap: usize,
    /// Backtracking nodes allowed per cover search.
    pub node_budget: u64,
    /// Wall-clock budget for a whole solve.
    pub time_budget: Option<Duration>,
}

impl Default for SolveLimits {
    fn default() -> Self {
        Self {
            geodesic_cap: DEFAULT_GEODESIC_CAP,
            node_budget: 50_000_000,
            time_budget: None,
        }
    }
}

impl SolveLimits {
    pub fn validate(&self) -> Result<()> {
        if self.geodesic_cap == 0 || self.node_budget == 0 {
            return Err(Error::InvalidParameter(
                "solver limits must be positive".into(),
            ));
        }
        if self.time_budget == Some(Duration::ZERO) {
            return Err(Error::InvalidParameter(
                "time budget must be positive".into(),
            ));
        }
        Ok(())
    }

    fn deadline(&self) -> Option<Instant> {
        self.time_budget.map(|d| Instant::now() + d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    NoCover,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub pairs_enumerated: u64,
    pub candidate_sets: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.candidate_sets += other.candidate_sets;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    Covered(CoverWitness),
    /// Exhaustive search proved that no geodesic selection covers the graph.
    NoCover,
    /// A cap or budget was hit before the search could conclude.
    Indeterminate,
}

/// Outcome of [`strong_geodetic_number`].
///
/// With `Status::Optimal`, `value` is `sg(G)` and `witness` verifies. With
/// `Status::Indeterminate`, `value`/`witness` (if any) are an upper bound and
/// a set of that size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SgSolution {
    pub status: Status,
    pub value: Option<usize>,
    pub lower_bound: usize,
    pub witness: Option<CoverWitness>,
    pub stats: SearchStats,
}

impl SgSolution {
    pub fn optimum(&self) -> Option<(usize, &CoverWitness)> {
        match (self.status, self.value, &self.witness) {
            (Status::Optimal, Some(v), Some(w)) => Some((v, w)),
            _ => None,
        }
    }
}

/// Lazily filled distance rows and per-pair geodesic lists, shared by the
/// cover searches of one solve.
struct PairTable<'g> {
    graph: &'g Graph,
    cap: usize,
    rows: RwLock<HashMap<VertexId, Arc<DistanceRow>>>,
    pairs: RwLock<HashMap<(VertexId, VertexId), Arc<GeodesicList>>>,
}

impl<'g> PairTable<'g> {
    fn new(graph: &'g Graph, cap: usize) -> Self {
        Self {
            graph,
            cap,
            rows: RwLock::default(),
            pairs: RwLock::default(),
        }
    }

    fn row(&self, v: VertexId) -> Arc<DistanceRow> {
        if let Some(r) = self.rows.read().unwrap().get(&v) {
            return Arc::clone(r);
        }
        let r = Arc::new(bfs_distances(self.graph, v));
        Arc::clone(self.rows.write().unwrap().entry(v).or_insert(r))
    }

    fn geodesics(&self, x: VertexId, y: VertexId) -> Result<Arc<GeodesicList>> {
        let key = (x.min(y), x.max(y));
        if let Some(l) = self.pairs.read().unwrap().get(&key) {
            return Ok(Arc::clone(l));
        }
        let l = Arc::new(all_geodesics(self.graph, key.0, key.1, self.cap)?);
        Ok(Arc::clone(
            self.pairs.write().unwrap().entry(key).or_insert(l),
        ))
    }

    fn pairs_enumerated(&self) -> u64 {
        self.pairs.read().unwrap().len() as u64
    }

    /// Every vertex outside `set` lies on some geodesic between two members.
    fn intervals_cover(&self, set: &[VertexId]) -> bool {
        let rows: Vec<_> = set.iter().map(|&s| self.row(s)).collect();
        let mut member = vec![false; self.graph.n()];
        for &s in set {
            member[s] = true;
        }
        (0..self.graph.n()).filter(|&t| !member[t]).all(|t| {
            (0..set.len()).tuple_combinations().any(|(i, j)| {
                let d = rows[i].get(set[j]).unwrap();
                rows[i].get(t).unwrap() + rows[j].get(t).unwrap() == d
            })
        })
    }
}

struct Choice {
    pair: usize,
    endpoints: [VertexId; 2],
    path_index: usize,
    targets: Vec<usize>,
}

enum Search {
    Found,
    Exhausted,
    OutOfBudget,
}

struct CoverSearch<'a> {
    choices: &'a [Choice],
    by_target: Vec<Vec<usize>>,
    pair_used: Vec<bool>,
    cover_count: Vec<u32>,
    uncovered: usize,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    deadline: Option<Instant>,
}

impl CoverSearch<'_> {
    fn apply(&mut self, c: usize, sign: i32) {
        let choice = &self.choices[c];
        self.pair_used[choice.pair] = sign > 0;
        for &t in &choice.targets {
            if sign > 0 {
                if self.cover_count[t] == 0 {
                    self.uncovered -= 1;
                }
                self.cover_count[t] += 1;
            } else {
                self.cover_count[t] -= 1;
                if self.cover_count[t] == 0 {
                    self.uncovered += 1;
                }
            }
        }
    }

    fn available(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.by_target[t]
            .iter()
            .copied()
            .filter(|&c| !self.pair_used[self.choices[c].pair])
    }

    fn run(&mut self) -> Search {
        if self.uncovered == 0 {
            return Search::Found;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Search::OutOfBudget;
        }
        if self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Search::OutOfBudget;
        }

        let mut best: Option<(usize, usize)> = None;
        for t in 0..self.cover_count.len() {
            if self.cover_count[t] > 0 {
                continue;
            }
            let options = self.available(t).count();
            if options == 0 {
                return Search::Exhausted;
            }
            if best.is_none_or(|(_, b)| options < b) {
                best = Some((t, options));
            }
        }
        let (target, _) = best.expect("an uncovered target exists");

        // Try options that cover the most still-uncovered targets first.
        let mut options: Vec<(usize, usize)> = self
            .available(target)
            .map(|c| {
                let gain = self.choices[c]
                    .targets
                    .iter()
                    .filter(|&&t| self.cover_count[t] == 0)
                    .count();
                (c, gain)
            })
            .collect();
        options.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

        for (c, _) in options {
            self.apply(c, 1);
            self.chosen.push(c);
            match self.run() {
                Search::Found => return Search::Found,
                Search::OutOfBudget => return Search::OutOfBudget,
                Search::Exhausted => {}
            }
            self.chosen.pop();
            self.apply(c, -1);
        }
        Search::Exhausted
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Cover search on a sorted, deduplicated `set`. Returns the outcome and the
/// number of nodes expanded.
fn search_cover(
    table: &PairTable<'_>,
    set: &[VertexId],
    limits: &SolveLimits,
    deadline: Option<Instant>,
) -> Result<(CoverOutcome, u64)> {
    let g = table.graph;
    let n = g.n();
    if set.len() == n {
        return Ok((
            CoverOutcome::Covered(CoverWitness::new(set.to_vec(), vec![])),
            0,
        ));
    }
    if set.len() < 2 {
        return Ok((CoverOutcome::NoCover, 0));
    }
    if !table.intervals_cover(set) {
        return Ok((CoverOutcome::NoCover, 0));
    }

    let mut target_of = vec![None; n];
    let mut targets = 0;
    let mut member = vec![false; n];
    for &s in set {
        member[s] = true;
    }
    for v in (0..n).filter(|&v| !member[v]) {
        target_of[v] = Some(targets);
        targets += 1;
    }

    let mut incomplete = false;
    let mut choices = Vec::new();
    let mut max_gain_total = 0usize;
    let mut lists = Vec::new();
    for (pair, (i, j)) in (0..set.len()).tuple_combinations().enumerate() {
        let (x, y) = (set[i], set[j]);
        let list = table.geodesics(x, y)?;
        incomplete |= list.capped;

        let mut seen = HashSet::new();
        let mut covers: Vec<(Vec<usize>, usize)> = Vec::new();
        for (idx, path) in list.paths.iter().enumerate() {
            let mut cov: Vec<usize> = path
                .interior()
                .iter()
                .filter_map(|&v| target_of[v])
                .collect();
            cov.sort_unstable();
            if !cov.is_empty() && seen.insert(cov.clone()) {
                covers.push((cov, idx));
            }
        }
        // Drop options whose coverage is strictly inside another option of
        // the same pair; the larger one is never worse.
        if covers.len() <= 256 {
            let keep: Vec<bool> = covers
                .iter()
                .map(|(c, _)| {
                    !covers
                        .iter()
                        .any(|(d, _)| d.len() > c.len() && is_subset(c, d))
                })
                .collect();
            covers = covers
                .into_iter()
                .zip(keep)
                .filter_map(|(c, k)| k.then_some(c))
                .collect();
        }
        max_gain_total += covers.iter().map(|(c, _)| c.len()).max().unwrap_or(0);
        for (cov, path_index) in covers {
            choices.push(Choice {
                pair,
                endpoints: [x, y],
                path_index,
                targets: cov,
            });
        }
        lists.push(list);
    }
    let pair_count = lists.len();
    let undecided = if incomplete {
        CoverOutcome::Indeterminate
    } else {
        CoverOutcome::NoCover
    };
    if max_gain_total < targets {
        return Ok((undecided, 0));
    }

    let mut by_target = vec![Vec::new(); targets];
    for (c, choice) in choices.iter().enumerate() {
        for &t in &choice.targets {
            by_target[t].push(c);
        }
    }
    let mut search = CoverSearch {
        choices: &choices,
        by_target,
        pair_used: vec![false; pair_count],
        cover_count: vec![0; targets],
        uncovered: targets,
        chosen: Vec::new(),
        nodes: 0,
        budget: limits.node_budget,
        deadline,
    };
    let outcome = match search.run() {
        Search::Found => {
            let geodesics = search
                .chosen
                .iter()
                .map(|&c| {
                    let choice = &choices[c];
                    AssignedGeodesic {
                        pair: choice.endpoints,
                        path: lists[choice.pair].paths[choice.path_index].clone(),
                    }
                })
                .collect();
            CoverOutcome::Covered(CoverWitness::new(set.to_vec(), geodesics))
        }
        Search::Exhausted => undecided,
        Search::OutOfBudget => CoverOutcome::Indeterminate,
    };
    Ok((outcome, search.nodes))
}

fn normalize_set(g: &Graph, set: &[VertexId]) -> Result<Vec<VertexId>> {
    for &v in set {
        g.check_vertex(v)?;
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Decides whether `set` is a strong geodetic set of `g`, returning a
/// covering assignment when it is.
pub fn find_assignment(g: &Graph, set: &[VertexId], limits: &SolveLimits) -> Result<CoverOutcome> {
    find_assignment_with_stats(g, set, limits).map(|(o, _)| o)
}

pub fn find_assignment_with_stats(
    g: &Graph,
    set: &[VertexId],
    limits: &SolveLimits,
) -> Result<(CoverOutcome, SearchStats)> {
    limits.validate()?;
    g.require_connected()?;
    let set = normalize_set(g, set)?;
    let table = PairTable::new(g, limits.geodesic_cap);
    let (outcome, nodes) = search_cover(&table, &set, limits, limits.deadline())?;
    let stats = SearchStats {
        nodes_expanded: nodes,
        pairs_enumerated: table.pairs_enumerated(),
        candidate_sets: 1,
    };
    Ok((outcome, stats))
}

/// Smallest `k` such that `k` endpoints plus the interiors of their
/// `k(k-1)/2` geodesics can reach `n` vertices when no geodesic is longer
/// than `diameter`.
fn counting_bound(n: usize, diameter: u32) -> usize {
    let inner = diameter.saturating_sub(1) as usize;
    (1..=n)
        .find(|&k| k + k * (k - 1) / 2 * inner >= n)
        .unwrap_or(n)
}

/// `max(#simplicial, 2, counting bound)`; 1 for the single-vertex graph.
pub fn sg_lower_bound(g: &Graph) -> Result<usize> {
    g.require_connected()?;
    if g.n() == 1 {
        return Ok(1);
    }
    let diameter = g.diameter().ok_or(Error::Disconnected)?;
    Ok(simplicial_vertices(g)
        .len()
        .max(2)
        .max(counting_bound(g.n(), diameter)))
}

/// Exact `sg(G)` with a witness.
///
/// Simplicial vertices are forced into every candidate. Sizes are tried
/// upward from [`sg_lower_bound`], and within one size the extensions are
/// visited in lexicographic order; the first covered set is reported, so the
/// witness is the lexicographically least optimum.
pub fn strong_geodetic_number(g: &Graph, limits: &SolveLimits) -> Result<SgSolution> {
    limits.validate()?;
    g.require_connected()?;
    let n = g.n();
    if n == 1 {
        return Ok(SgSolution {
            status: Status::Optimal,
            value: Some(1),
            lower_bound: 1,
            witness: Some(CoverWitness::new([0], vec![])),
            stats: SearchStats::default(),
        });
    }

    let forced = simplicial_vertices(g);
    let lower_bound = sg_lower_bound(g)?;
    let mut is_forced = vec![false; n];
    for &v in &forced {
        is_forced[v] = true;
    }
    let free: Vec<VertexId> = (0..n).filter(|&v| !is_forced[v]).collect();
    let deadline = limits.deadline();
    let table = PairTable::new(g, limits.geodesic_cap);
    let mut stats = SearchStats::default();
    let mut undecided_below = false;

    let finish = |status, value, witness, mut stats: SearchStats, table: &PairTable<'_>| {
        stats.pairs_enumerated = table.pairs_enumerated();
        SgSolution {
            status,
            value,
            lower_bound,
            witness,
            stats,
        }
    };

    for k in lower_bound.max(forced.len())..=n {
        let mut undecided_here = false;
        let mut combos = free.iter().copied().combinations(k - forced.len());
        loop {
            let batch: Vec<Vec<VertexId>> = combos.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let results: Vec<Result<(CoverOutcome, u64)>> = batch
                .par_iter()
                .map(|ext| {
                    let mut set: Vec<VertexId> = forced.iter().chain(ext).copied().collect();
                    set.sort_unstable();
                    search_cover(&table, &set, limits, deadline)
                })
                .collect();
            let mut found = None;
            for r in results {
                let (outcome, nodes) = r?;
                stats.absorb(&SearchStats {
                    nodes_expanded: nodes,
                    pairs_enumerated: 0,
                    candidate_sets: 1,
                });
                match outcome {
                    CoverOutcome::Covered(w) if found.is_none() => found = Some(w),
                    CoverOutcome::Indeterminate if found.is_none() => undecided_here = true,
                    _ => {}
                }
            }
            if let Some(w) = found {
                let status = if undecided_below {
                    Status::Indeterminate
                } else {
                    Status::Optimal
                };
                return Ok(finish(status, Some(k), Some(w), stats, &table));
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                return Ok(finish(Status::Indeterminate, None, None, stats, &table));
            }
        }
        undecided_below |= undecided_here;
    }
    Err(Error::Consistency(
        "the full vertex set must always be a strong geodetic set".into(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodeticSolution {
    pub value: usize,
    pub set: Vec<VertexId>,
}

/// Exact geodetic number `g(G)`: the smallest `S` whose geodesic intervals,
/// taking every geodesic of every pair, cover `V`.
pub fn geodetic_number(g: &Graph) -> Result<GeodeticSolution> {
    g.require_connected()?;
    let n = g.n();
    if n == 1 {
        return Ok(GeodeticSolution {
            value: 1,
            set: vec![0],
        });
    }
    let rows: Vec<DistanceRow> = (0..n).map(|v| bfs_distances(g, v)).collect();
    let d = |u: VertexId, v: VertexId| rows[u].get(v).expect("connected");
    let mut intervals: HashMap<(VertexId, VertexId), FixedBitSet> = HashMap::new();
    let mut interval = |x: VertexId, y: VertexId| -> FixedBitSet {
        intervals
            .entry((x, y))
            .or_insert_with(|| {
                let mut bits = FixedBitSet::with_capacity(n);
                for w in (0..n).filter(|&w| d(x, w) + d(w, y) == d(x, y)) {
                    bits.insert(w);
                }
                bits
            })
            .clone()
    };

    // Simplicial vertices are never interior to a geodesic.
    let forced = simplicial_vertices(g);
    let free: Vec<VertexId> = (0..n).filter(|v| !forced.contains(v)).collect();
    for k in forced.len().max(2)..=n {
        for ext in free.iter().copied().combinations(k - forced.len()) {
            let mut set: Vec<VertexId> = forced.iter().chain(&ext).copied().collect();
            set.sort_unstable();
            let mut covered = FixedBitSet::with_capacity(n);
            for (&x, &y) in set.iter().tuple_combinations() {
                covered.union_with(&interval(x, y));
            }
            if covered.is_full() {
                return Ok(GeodeticSolution { value: k, set });
            }
        }
    }
    Err(Error::Consistency("V is always a geodetic set".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::witness::verify_witness;

    fn solve(g: &Graph) -> (usize, CoverWitness) {
        let s = strong_geodetic_number(g, &SolveLimits::default()).unwrap();
        let (v, w) = s.optimum().expect("optimal");
        (v, w.clone())
    }

    #[test]
    fn complete_graphs_need_every_vertex() {
        for n in 1..=6 {
            let g = generators::complete(n);
            assert_eq!(solve(&g).0, n);
            assert_eq!(geodetic_number(&g).unwrap().value, n);
        }
    }

    #[test]
    fn four_cycle() {
        let c4 = generators::cycle(4);
        let (v, w) = solve(&c4);
        assert_eq!(v, 3);
        assert_eq!(w.set, vec![0, 1, 2]);
        assert_eq!(verify_witness(&c4, &w), Ok(()));
        assert_eq!(geodetic_number(&c4).unwrap().value, 2);
    }

    #[test]
    fn c4_adjacent_pair_has_no_cover() {
        let c4 = generators::cycle(4);
        let out = find_assignment(&c4, &[0, 1], &SolveLimits::default()).unwrap();
        assert_eq!(out, CoverOutcome::NoCover);
    }

    #[test]
    fn p5_endpoints_use_the_whole_path() {
        let p5 = generators::path(5);
        match find_assignment(&p5, &[4, 0], &SolveLimits::default()).unwrap() {
            CoverOutcome::Covered(w) => {
                assert_eq!(w.set, vec![0, 4]);
                assert_eq!(w.geodesics.len(), 1);
                assert_eq!(w.geodesics[0].path.0, vec![0, 1, 2, 3, 4]);
            }
            other => panic!("expected a cover, got {other:?}"),
        }
    }

    #[test]
    fn capped_enumeration_never_claims_no_cover() {
        // C4 with S = {0, 2}: one geodesic per pair cannot reach both 1 and 3.
        // With a cap of 1 the search only sees one of the two geodesics.
        let c4 = generators::cycle(4);
        let limits = SolveLimits {
            geodesic_cap: 1,
            ..SolveLimits::default()
        };
        let out = find_assignment(&c4, &[0, 2], &limits).unwrap();
        assert_eq!(out, CoverOutcome::Indeterminate);
        let full = find_assignment(&c4, &[0, 2], &SolveLimits::default()).unwrap();
        assert_eq!(full, CoverOutcome::NoCover);
    }

    #[test]
    fn tiny_budget_is_indeterminate() {
        // The 3-cube needs a real search for its optimum.
        let edges = (0..8usize)
            .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
            .filter(|(u, v)| u < v);
        let q3 = Graph::new(8, edges).unwrap();
        let limits = SolveLimits {
            node_budget: 1,
            ..SolveLimits::default()
        };
        let s = strong_geodetic_number(&q3, &limits).unwrap();
        assert_eq!(s.status, Status::Indeterminate);
        let exact = strong_geodetic_number(&q3, &SolveLimits::default()).unwrap();
        assert_eq!(exact.status, Status::Optimal);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(sg_lower_bound(&generators::complete(4)).unwrap(), 4);
        // k = 2 reaches only 2 + 1 = 3 < 4 vertices at diameter 2.
        assert_eq!(sg_lower_bound(&generators::cycle(4)).unwrap(), 3);
        assert_eq!(sg_lower_bound(&generators::path(7)).unwrap(), 2);
        assert_eq!(counting_bound(10, 1), 10);
    }

    #[test]
    fn rejects_disconnected_and_bad_limits() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            strong_geodetic_number(&g, &SolveLimits::default()),
            Err(Error::Disconnected)
        );
        assert_eq!(geodetic_number(&g), Err(Error::Disconnected));
        let bad = SolveLimits {
            node_budget: 0,
            ..SolveLimits::default()
        };
        assert!(strong_geodetic_number(&generators::path(3), &bad).is_err());
    }

    #[test]
    fn stats_are_reported() {
        let s = strong_geodetic_number(&generators::cycle(6), &SolveLimits::default()).unwrap();
        assert_eq!(s.value, Some(3));
        assert!(s.stats.candidate_sets > 0);
        assert!(s.stats.pairs_enumerated > 0);
    }
}
