//! Base-3 Sierpiński graphs `S(n)` with their plane-embedding structure.
//!
//! Vertices are the strings of length `n` over `{0, 1, 2}`; the id of a
//! vertex is the base-3 value of its string, so ids follow label order.
//! `S(1)` is a triangle, and `S(n)` is three copies `0·S(n-1)`,
//! `1·S(n-1)`, `2·S(n-1)` joined by the single edges `i·j^(n-1) ~ j·i^(n-1)`.
//!
//! The standard drawing puts `0^n` on top, `1^n` bottom-left and `2^n`
//! bottom-right. In it the horizontal edges are exactly the pairs
//! `{s·1·2^k, s·2·1^k}`, and every bounded face has a unique lowest
//! horizontal edge on its boundary: its base.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::io::GraphJson;

/// Largest level generated (3^12 = 531441 vertices).
pub const MAX_LEVEL: usize = 12;

pub(crate) fn pow3(k: usize) -> usize {
    3usize.pow(k as u32)
}

/// Base-3 value of a digit string.
pub fn id_of(digits: &[u8]) -> VertexId {
    digits.iter().fold(0, |acc, &d| acc * 3 + d as usize)
}

/// Digits of `id` as a string of exactly `len` base-3 digits.
pub fn digits_of(mut id: VertexId, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (id % 3) as u8;
        id /= 3;
    }
    out
}

pub fn label_string(digits: &[u8]) -> String {
    digits.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Id of the string `prefix · i · j^k` where `prefix` has value `p`.
fn id_with_tail(p: usize, i: usize, j: usize, k: usize) -> VertexId {
    p * pow3(k + 1) + i * pow3(k) + j * (pow3(k) - 1) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HorizontalEdge {
    /// `[s·1·2^k, s·2·1^k]`.
    pub endpoints: [VertexId; 2],
    /// `0` for the base of a smallest triangle, `k >= 1` for a bridge.
    pub scale: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InnerFace {
    pub id: usize,
    /// Copy the face belongs to: the face is the smallest triangle of copy
    /// `prefix` when `scale == 0`, and the central hole of copy `prefix`
    /// otherwise.
    pub prefix: String,
    pub scale: usize,
    /// Cyclic vertex sequence.
    pub boundary: Vec<VertexId>,
    /// Index into [`SierpinskiGraph::horizontal_edges`].
    pub sits_on: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SierpinskiGraph {
    pub level: usize,
    pub graph: Graph,
    /// Ids of `0^n`, `1^n`, `2^n`.
    pub extremal: [VertexId; 3],
}

/// Generates `S(n)`, `n >= 1`.
pub fn sierpinski(level: usize) -> Result<SierpinskiGraph> {
    if level == 0 {
        return Err(Error::InvalidParameter(
            "Sierpiński level must be at least 1".into(),
        ));
    }
    if level > MAX_LEVEL {
        return Err(Error::LevelTooLarge {
            kind: "Sierpiński",
            level,
            max: MAX_LEVEL,
        });
    }
    let n = pow3(level);
    let mut edges = Vec::with_capacity(3 * (n - 1) / 2);
    for s in 0..n / 3 {
        edges.extend([
            (3 * s, 3 * s + 1),
            (3 * s, 3 * s + 2),
            (3 * s + 1, 3 * s + 2),
        ]);
    }
    for k in 1..level {
        for p in 0..pow3(level - 1 - k) {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                edges.push((id_with_tail(p, i, j, k), id_with_tail(p, j, i, k)));
            }
        }
    }
    let labels = (0..n)
        .map(|v| (v, label_string(&digits_of(v, level))))
        .collect();
    let graph = Graph::new(n, edges)?.with_labels(labels)?;
    let all = |d: usize| d * (n - 1) / 2;
    Ok(SierpinskiGraph {
        level,
        graph,
        extremal: [all(0), all(1), all(2)],
    })
}

impl SierpinskiGraph {
    pub fn digits(&self, v: VertexId) -> Vec<u8> {
        digits_of(v, self.level)
    }

    pub fn label(&self, v: VertexId) -> String {
        label_string(&self.digits(v))
    }

    /// Height of a vertex in the standard drawing: each leading `0` digit at
    /// depth `d` lifts the vertex by `2^(n-1-d)`.
    pub fn height(&self, v: VertexId) -> u64 {
        self.digits(v)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| 1u64 << (self.level - 1 - i))
            .sum()
    }

    /// Scale `k` if `{u, v}` has the form `{s·1·2^k, s·2·1^k}`.
    pub fn horizontal_scale(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let (a, b) = (self.digits(u), self.digits(v));
        let split = a.iter().zip(&b).position(|(x, y)| x != y)?;
        let (ta, tb) = (&a[split..], &b[split..]);
        let k = ta.len() - 1;
        let is = |t: &[u8], head: u8, rest: u8| t[0] == head && t[1..].iter().all(|&d| d == rest);
        let ok = (is(ta, 1, 2) && is(tb, 2, 1)) || (is(ta, 2, 1) && is(tb, 1, 2));
        ok.then_some(k)
    }

    /// One horizontal edge per copy prefix `s` (shorter prefixes first, then
    /// lexicographic), pairing `s·1·2^k` with `s·2·1^k`.
    pub fn horizontal_edges(&self) -> Vec<HorizontalEdge> {
        let mut out = Vec::with_capacity((pow3(self.level) - 1) / 2);
        for prefix_len in 0..self.level {
            let k = self.level - 1 - prefix_len;
            for p in 0..pow3(prefix_len) {
                let a = id_with_tail(p, 1, 2, k);
                let b = id_with_tail(p, 2, 1, k);
                out.push(HorizontalEdge {
                    endpoints: [a.min(b), a.max(b)],
                    scale: k,
                });
            }
        }
        out
    }

    /// Boundary cycle of the face of copy `p` (prefix length `level-1-k`).
    fn face_boundary(&self, p: usize, k: usize) -> Vec<VertexId> {
        if k == 0 {
            return vec![3 * p, 3 * p + 1, 3 * p + 2];
        }
        // Side of sub-copy `sub` running over tails in {lo, hi}^k, in the
        // order that walks from lo^k to hi^k.
        let side = |sub: usize, lo: u8, hi: u8, reverse: bool| {
            let base = (p * 3 + sub) * pow3(k);
            let mut run: Vec<VertexId> = (0..1usize << k)
                .map(|bits| {
                    let tail: Vec<u8> = (0..k)
                        .map(|i| if bits >> (k - 1 - i) & 1 == 1 { hi } else { lo })
                        .collect();
                    base + id_of(&tail)
                })
                .collect();
            if reverse {
                run.reverse();
            }
            run
        };
        let mut cycle = side(0, 1, 2, false); // s0·1^k .. s0·2^k
        cycle.extend(side(2, 0, 1, false)); // s2·0^k .. s2·1^k
        cycle.extend(side(1, 0, 2, true)); // s1·2^k .. s1·0^k
        cycle
    }

    /// All bounded faces with the horizontal edge each one sits on.
    ///
    /// The base of a face is found from its boundary alone (the lowest
    /// horizontal boundary edge), then checked to be unique per face and
    /// distinct across faces.
    pub fn inner_faces(&self) -> Result<Vec<InnerFace>> {
        let edges = self.horizontal_edges();
        let index: HashMap<[VertexId; 2], usize> = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.endpoints, i))
            .collect();
        let mut faces = Vec::with_capacity(edges.len());
        for prefix_len in 0..self.level {
            let k = self.level - 1 - prefix_len;
            for p in 0..pow3(prefix_len) {
                let boundary = self.face_boundary(p, k);
                let id = faces.len();
                let sits_on = self.lowest_horizontal(&boundary, &index)?;
                faces.push(InnerFace {
                    id,
                    prefix: label_string(&digits_of(p, prefix_len)),
                    scale: k,
                    boundary,
                    sits_on,
                });
            }
        }
        let mut hit = vec![false; edges.len()];
        for f in &faces {
            if std::mem::replace(&mut hit[f.sits_on], true) {
                return Err(Error::Consistency(format!(
                    "two faces sit on horizontal edge {}",
                    f.sits_on
                )));
            }
        }
        Ok(faces)
    }

    fn lowest_horizontal(
        &self,
        boundary: &[VertexId],
        index: &HashMap<[VertexId; 2], usize>,
    ) -> Result<usize> {
        let mut best: Option<(u64, usize)> = None;
        let mut tied = false;
        for (i, &u) in boundary.iter().enumerate() {
            let v = boundary[(i + 1) % boundary.len()];
            if !self.graph.has_edge(u, v) {
                return Err(Error::Consistency(format!(
                    "face boundary steps along non-edge {u}-{v}"
                )));
            }
            if self.horizontal_scale(u, v).is_none() {
                continue;
            }
            let h = self.height(u);
            let e = index[&[u.min(v), u.max(v)]];
            match best {
                Some((bh, _)) if h > bh => {}
                Some((bh, _)) if h == bh => tied = true,
                _ => {
                    best = Some((h, e));
                    tied = false;
                }
            }
        }
        match best {
            Some((_, e)) if !tied => Ok(e),
            _ => Err(Error::Consistency(
                "face has no unique lowest horizontal edge".into(),
            )),
        }
    }

    pub fn to_json(&self) -> Result<SierpinskiJson> {
        let faces = self.inner_faces()?;
        Ok(SierpinskiJson {
            graph: GraphJson::from(&self.graph),
            level: self.level,
            extremal: self.extremal,
            horizontal_edges: self.horizontal_edges(),
            faces: faces
                .into_iter()
                .map(|f| FaceJson {
                    id: f.id,
                    boundary: f.boundary,
                    sits_on: f.sits_on,
                })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceJson {
    pub id: usize,
    pub boundary: Vec<VertexId>,
    pub sits_on: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SierpinskiJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub level: usize,
    pub extremal: [VertexId; 3],
    pub horizontal_edges: Vec<HorizontalEdge>,
    pub faces: Vec<FaceJson>,
}
