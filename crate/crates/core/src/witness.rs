//! Strong geodetic witnesses and their verification.
//!
//! A witness is a vertex set `S` together with geodesics fixed for some of the
//! unordered pairs of `S`. Pairs without an entry are left free: any fixed
//! shortest path can be chosen for them later, and that only adds coverage,
//! so verification only needs the listed pairs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geodesic::GeodesicPath;
use crate::graph::{bfs_distances, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignedGeodesic {
    pub pair: [VertexId; 2],
    pub path: GeodesicPath,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub set: Vec<VertexId>,
    pub geodesics: Vec<AssignedGeodesic>,
}

impl CoverWitness {
    /// Canonical form: sorted set, pairs stored as `[min, max]` with the path
    /// running from `min` to `max`, entries sorted by pair.
    pub fn new(set: impl IntoIterator<Item = VertexId>, geodesics: Vec<AssignedGeodesic>) -> Self {
        let set: BTreeSet<VertexId> = set.into_iter().collect();
        let mut geodesics: Vec<AssignedGeodesic> = geodesics
            .into_iter()
            .map(|AssignedGeodesic { pair, mut path }| {
                let pair = [pair[0].min(pair[1]), pair[0].max(pair[1])];
                if path.first() == Some(pair[1]) && path.last() == Some(pair[0]) {
                    path.0.reverse();
                }
                AssignedGeodesic { pair, path }
            })
            .collect();
        geodesics.sort_by_key(|a| a.pair);
        Self {
            set: set.into_iter().collect(),
            geodesics,
        }
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// Union of `S` and every assigned path.
    pub fn covered(&self, n: usize) -> Vec<bool> {
        let mut covered = vec![false; n];
        let all = self
            .set
            .iter()
            .chain(self.geodesics.iter().flat_map(|a| a.path.vertices()));
        for &v in all {
            if v < n {
                covered[v] = true;
            }
        }
        covered
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(VertexId),
    #[error("vertex {0} is listed twice in the set")]
    DuplicateSetVertex(VertexId),
    #[error("pair {0} has identical endpoints")]
    DegeneratePair(PairName),
    #[error("pair {0} is not drawn from the set")]
    PairOutsideSet(PairName),
    #[error("pair {0} is assigned more than one geodesic")]
    DuplicatePair(PairName),
    #[error("pair/path endpoint mismatch for pair {0}")]
    EndpointMismatch(PairName),
    #[error("path for pair {pair} repeats vertex {vertex}")]
    RepeatedVertex { pair: PairName, vertex: VertexId },
    #[error("path for pair {pair} steps along non-edge {from}-{to}")]
    NonAdjacentStep {
        pair: PairName,
        from: VertexId,
        to: VertexId,
    },
    #[error("path for pair {pair} has length {length} but the distance is {distance}")]
    NotShortest {
        pair: PairName,
        length: usize,
        distance: String,
    },
    #[error("vertex {0} is not covered")]
    Uncovered(VertexId),
}

/// Display helper for an unordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairName(pub VertexId, pub VertexId);

impl fmt::Display for PairName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

/// Checks every witness invariant and total coverage, reporting the first
/// violation found.
pub fn verify_witness(g: &Graph, w: &CoverWitness) -> Result<(), Violation> {
    let n = g.n();
    let mut in_set = vec![false; n];
    for &v in &w.set {
        if v >= n {
            return Err(Violation::VertexOutOfRange(v));
        }
        if std::mem::replace(&mut in_set[v], true) {
            return Err(Violation::DuplicateSetVertex(v));
        }
    }

    let mut seen_pairs = BTreeSet::new();
    for AssignedGeodesic { pair, path } in &w.geodesics {
        let [x, y] = *pair;
        let name = PairName(x, y);
        if let Some(&v) = pair.iter().chain(path.vertices()).find(|&&v| v >= n) {
            return Err(Violation::VertexOutOfRange(v));
        }
        if x == y {
            return Err(Violation::DegeneratePair(name));
        }
        if !in_set[x] || !in_set[y] {
            return Err(Violation::PairOutsideSet(name));
        }
        if !seen_pairs.insert((x.min(y), x.max(y))) {
            return Err(Violation::DuplicatePair(name));
        }
        let ends = (path.first(), path.last());
        if ends != (Some(x), Some(y)) && ends != (Some(y), Some(x)) {
            return Err(Violation::EndpointMismatch(name));
        }
        let mut on_path = BTreeSet::new();
        for &v in path.vertices() {
            if !on_path.insert(v) {
                return Err(Violation::RepeatedVertex {
                    pair: name,
                    vertex: v,
                });
            }
        }
        if let Some(step) = path.vertices().windows(2).find(|s| !g.has_edge(s[0], s[1])) {
            return Err(Violation::NonAdjacentStep {
                pair: name,
                from: step[0],
                to: step[1],
            });
        }
        let distance = bfs_distances(g, x).get(y);
        if distance != Some(path.len() as u32) {
            return Err(Violation::NotShortest {
                pair: name,
                length: path.len(),
                distance: distance.map_or_else(|| "infinite".to_owned(), |d| d.to_string()),
            });
        }
    }

    match w.covered(n).iter().position(|&c| !c) {
        Some(v) => Err(Violation::Uncovered(v)),
        None => Ok(()),
    }
}

pub fn is_valid_witness(g: &Graph, w: &CoverWitness) -> bool {
    verify_witness(g, w).is_ok()
}

/// The witness `S = V` with every edge assigned to its own endpoints.
pub fn trivial_witness(g: &Graph) -> CoverWitness {
    let geodesics = g
        .edges()
        .map(|(u, v)| AssignedGeodesic {
            pair: [u, v],
            path: GeodesicPath(vec![u, v]),
        })
        .collect();
    CoverWitness::new(0..g.n(), geodesics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn assigned(pair: [VertexId; 2], path: &[VertexId]) -> AssignedGeodesic {
        AssignedGeodesic {
            pair,
            path: GeodesicPath(path.to_vec()),
        }
    }

    #[test]
    fn c4_adjacent_pair_leaves_two_uncovered() {
        let c4 = generators::cycle(4);
        let w = CoverWitness::new([0, 1], vec![assigned([0, 1], &[0, 1])]);
        assert_eq!(verify_witness(&c4, &w), Err(Violation::Uncovered(2)));
    }

    #[test]
    fn c6_alternate_vertices() {
        let c6 = generators::cycle(6);
        let w = CoverWitness::new(
            [0, 2, 4],
            vec![
                assigned([0, 2], &[0, 1, 2]),
                assigned([2, 4], &[2, 3, 4]),
                assigned([0, 4], &[0, 5, 4]),
            ],
        );
        assert_eq!(verify_witness(&c6, &w), Ok(()));
    }

    #[test]
    fn malformed_paths_are_reported_with_their_pair() {
        let c6 = generators::cycle(6);
        let base = |g: AssignedGeodesic| CoverWitness {
            set: vec![0, 2, 4],
            geodesics: vec![g],
        };
        assert_eq!(
            verify_witness(&c6, &base(assigned([0, 2], &[0, 1, 3]))),
            Err(Violation::EndpointMismatch(PairName(0, 2)))
        );
        assert_eq!(
            verify_witness(&c6, &base(assigned([0, 2], &[0, 1, 0, 1, 2]))),
            Err(Violation::RepeatedVertex {
                pair: PairName(0, 2),
                vertex: 0
            })
        );
        assert_eq!(
            verify_witness(&c6, &base(assigned([0, 2], &[0, 2]))),
            Err(Violation::NonAdjacentStep {
                pair: PairName(0, 2),
                from: 0,
                to: 2
            })
        );
        assert!(matches!(
            verify_witness(&c6, &base(assigned([0, 4], &[0, 1, 2, 3, 4]))),
            Err(Violation::NotShortest { .. })
        ));
        assert_eq!(
            verify_witness(&c6, &base(assigned([0, 3], &[0, 1, 2, 3]))),
            Err(Violation::PairOutsideSet(PairName(0, 3)))
        );
        let dup = CoverWitness {
            set: vec![0, 2, 4],
            geodesics: vec![assigned([0, 2], &[0, 1, 2]), assigned([2, 0], &[2, 1, 0])],
        };
        assert_eq!(
            verify_witness(&c6, &dup),
            Err(Violation::DuplicatePair(PairName(2, 0)))
        );
        let message = Violation::EndpointMismatch(PairName(0, 2)).to_string();
        assert!(message.contains("pair/path endpoint mismatch"));
    }

    #[test]
    fn reversed_paths_are_accepted() {
        let p3 = generators::path(3);
        let w = CoverWitness {
            set: vec![0, 2],
            geodesics: vec![assigned([0, 2], &[2, 1, 0])],
        };
        assert_eq!(verify_witness(&p3, &w), Ok(()));
        // canonicalization flips it
        let c = CoverWitness::new(w.set.clone(), w.geodesics.clone());
        assert_eq!(c.geodesics[0].path.0, vec![0, 1, 2]);
    }

    #[test]
    fn whole_vertex_set_always_works() {
        for g in [
            generators::cycle(5),
            generators::complete(4),
            generators::path(6),
        ] {
            assert_eq!(verify_witness(&g, &trivial_witness(&g)), Ok(()));
        }
    }

    #[test]
    fn witness_json_shape() {
        let w = CoverWitness::new([0, 2], vec![assigned([0, 2], &[0, 1, 2])]);
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"set": [0, 2], "geodesics": [{"pair": [0, 2], "path": [0, 1, 2]}]})
        );
    }
}
