//! Small graph families, seeded random graphs, and an isomorphism-free
//! catalogue of small graphs.

use std::collections::HashSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).tuple_combinations()).expect("valid complete graph")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
}

pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
}

/// Erdős–Rényi `G(n, p)` driven by a ChaCha8 stream, so a seed fixes the
/// output across platforms and crate versions.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gnp_with(n, p, &mut rng)
}

pub fn gnp_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} is outside [0, 1]"
        )));
    }
    let mut edges = Vec::new();
    for (u, v) in (0..n).tuple_combinations() {
        if rng.gen_bool(p) {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

/// Rejection-samples `G(n, p)` until connected.
pub fn gnp_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if p <= 0.0 && n > 1 {
        return Err(Error::InvalidParameter(
            "p = 0 never yields a connected graph".into(),
        ));
    }
    loop {
        let g = gnp_with(n, p, rng)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}

pub fn gnp_connected_seeded(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gnp_connected(n, p, &mut rng)
}

fn edge_index(u: usize, v: usize) -> usize {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    hi * (hi - 1) / 2 + lo
}

/// Canonical edge bitmask: minimum over all vertex relabelings.
fn canonical_mask(n: usize, mask: u64) -> u64 {
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| mask >> edge_index(u, v) & 1 == 1)
        .collect();
    (0..n)
        .permutations(n)
        .map(|perm| {
            edges
                .iter()
                .fold(0u64, |acc, &(u, v)| acc | 1 << edge_index(perm[u], perm[v]))
        })
        .min()
        .unwrap_or(0)
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| mask >> edge_index(u, v) & 1 == 1);
    Graph::new(n, edges).expect("mask edges are in range")
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, ordered by canonical edge mask. Limited to `n <= 6`.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    const MAX: usize = 6;
    if n > MAX {
        return Err(Error::LevelTooLarge {
            kind: "graph catalogue",
            level: n,
            max: MAX,
        });
    }
    // Every graph on n vertices is a graph on n-1 vertices plus a vertex
    // attached to some subset, so extending all classes at n-1 reaches all
    // classes at n.
    let mut classes: Vec<u64> = vec![0];
    for size in 2..=n {
        let prev = size - 1;
        let mut seen = HashSet::new();
        for &mask in &classes {
            for attach in 0u64..(1 << prev) {
                let mut m = mask;
                for u in (0..prev).filter(|&u| attach >> u & 1 == 1) {
                    m |= 1 << edge_index(u, prev);
                }
                seen.insert(canonical_mask(size, m));
            }
        }
        classes = seen.into_iter().collect();
        classes.sort_unstable();
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(classes.into_iter().map(|m| graph_from_mask(n, m)).collect())
}

/// Connected graphs on `1..=max_n` vertices, one per isomorphism class.
pub fn connected_catalogue(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(all_graphs(n)?.into_iter().filter(Graph::is_connected));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_sizes_match_known_counts() {
        // graphs and connected graphs on n unlabeled vertices
        let all = [1, 2, 4, 11, 34, 156];
        let connected = [1, 1, 2, 6, 21, 112];
        for n in 1..=6 {
            let graphs = all_graphs(n).unwrap();
            assert_eq!(graphs.len(), all[n - 1], "n = {n}");
            let c = graphs.iter().filter(|g| g.is_connected()).count();
            assert_eq!(c, connected[n - 1], "n = {n}");
        }
        assert_eq!(connected_catalogue(6).unwrap().len(), 143);
    }

    #[test]
    fn seeded_gnp_is_reproducible() {
        let a = gnp(10, 0.4, 42).unwrap();
        let b = gnp(10, 0.4, 42).unwrap();
        assert_eq!(a, b);
        assert!(gnp(3, 1.5, 0).is_err());
    }

    #[test]
    fn connected_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert!(gnp_connected(8, 0.3, &mut rng).unwrap().is_connected());
        }
    }

    #[test]
    fn families() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(path(5).edge_count(), 4);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(star(3).degree(0), 3);
    }
}
