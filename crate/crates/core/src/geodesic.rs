//! Shortest-path (geodesic) recognition, counting and enumeration.
//!
//! Both counting and enumeration walk the shortest-path DAG between `u` and
//! `v`: the vertices `w` with `d(u, w) + d(w, v) = d(u, v)`, with arcs that
//! step one hop further from `u` and one hop closer to `v`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, DistanceRow, Graph, VertexId};

/// Default cap on the number of geodesics materialized for one pair.
pub const DEFAULT_GEODESIC_CAP: usize = 1_000_000;

/// Vertex sequence of a shortest path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeodesicPath(pub Vec<VertexId>);

impl GeodesicPath {
    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Edge count.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<VertexId> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<VertexId> {
        self.0.last().copied()
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self) -> &[VertexId] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    /// True when consecutive vertices are adjacent, no vertex repeats, and the
    /// edge count equals the hop distance between the endpoints.
    pub fn is_geodesic_in(&self, g: &Graph) -> bool {
        let (Some(first), Some(last)) = (self.first(), self.last()) else {
            return false;
        };
        if self.0.iter().any(|&v| v >= g.n()) {
            return false;
        }
        if !self.0.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return false;
        }
        bfs_distances(g, first).get(last) == Some(self.len() as u32)
    }
}

impl From<Vec<VertexId>> for GeodesicPath {
    fn from(v: Vec<VertexId>) -> Self {
        Self(v)
    }
}

/// Result of a capped enumeration. When `capped` is set, `paths` holds the
/// first `cap` geodesics in lexicographic order and more exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicList {
    pub paths: Vec<GeodesicPath>,
    pub capped: bool,
}

/// Distance rows from both endpoints, validated.
struct Endpoints {
    from_u: DistanceRow,
    from_v: DistanceRow,
    dist: u32,
}

fn endpoints(g: &Graph, u: VertexId, v: VertexId) -> Result<Endpoints> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::SameEndpoints(u));
    }
    let from_u = bfs_distances(g, u);
    let dist = from_u.get(v).ok_or(Error::Unreachable(u, v))?;
    let from_v = bfs_distances(g, v);
    Ok(Endpoints {
        from_u,
        from_v,
        dist,
    })
}

impl Endpoints {
    fn on_dag(&self, w: VertexId) -> bool {
        matches!(
            (self.from_u.get(w), self.from_v.get(w)),
            (Some(a), Some(b)) if a + b == self.dist
        )
    }

    /// Successor test in the DAG oriented from `u` to `v`.
    fn steps_forward(&self, from: VertexId, to: VertexId) -> bool {
        self.on_dag(to) && self.from_u.get(to) == self.from_u.get(from).map(|d| d + 1)
    }
}

/// Number of distinct `u,v`-geodesics. Saturates at `u128::MAX`.
pub fn count_geodesics(g: &Graph, u: VertexId, v: VertexId) -> Result<u128> {
    let ends = endpoints(g, u, v)?;
    let mut layers: Vec<Vec<VertexId>> = vec![Vec::new(); ends.dist as usize + 1];
    for w in 0..g.n() {
        if ends.on_dag(w) {
            layers[ends.from_u.get(w).unwrap() as usize].push(w);
        }
    }
    let mut ways = vec![0u128; g.n()];
    ways[u] = 1;
    for layer in layers.iter().skip(1) {
        for &w in layer {
            ways[w] = g
                .neighbors(w)
                .iter()
                .filter(|&&p| ends.steps_forward(p, w))
                .fold(0u128, |acc, &p| acc.saturating_add(ways[p]));
        }
    }
    Ok(ways[v])
}

/// All `u,v`-geodesics in lexicographic order of their vertex sequences,
/// up to `cap` of them.
pub fn all_geodesics(g: &Graph, u: VertexId, v: VertexId, cap: usize) -> Result<GeodesicList> {
    if cap == 0 {
        return Err(Error::InvalidParameter(
            "geodesic cap must be at least 1".into(),
        ));
    }
    let total = count_geodesics(g, u, v)?;
    let ends = endpoints(g, u, v)?;

    let mut paths = Vec::new();
    let mut current = vec![u];
    // Explicit stack of (vertex, index of next neighbor to try).
    let mut stack: Vec<(VertexId, usize)> = vec![(u, 0)];
    while let Some(&mut (at, ref mut next)) = stack.last_mut() {
        if at == v {
            paths.push(GeodesicPath(current.clone()));
            if paths.len() == cap {
                break;
            }
            stack.pop();
            current.pop();
            continue;
        }
        let nbrs = g.neighbors(at);
        let mut advanced = false;
        while *next < nbrs.len() {
            let w = nbrs[*next];
            *next += 1;
            if ends.steps_forward(at, w) {
                stack.push((w, 0));
                current.push(w);
                advanced = true;
                break;
            }
        }
        if !advanced {
            stack.pop();
            current.pop();
        }
    }
    Ok(GeodesicList {
        capped: total > paths.len() as u128,
        paths,
    })
}
