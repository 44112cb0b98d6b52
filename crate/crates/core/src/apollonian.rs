//! Apollonian networks and their optimal strong geodetic witnesses.
//!
//! Growth starts from the triangle `a, b, c`. Each round inserts a vertex
//! into every current triangular face (or, for incomplete networks, into a
//! chosen subset) and joins it to the three corners. Faces are addressed by
//! digit strings: inserting `v` into face `t` with corners `(x0, x1, x2)`
//! creates faces `t·0`, `t·1`, `t·2`, where `t·i` is the face opposite `xi`
//! and `v` takes over the corner slot `i`. With that rule the faces of
//! `A(r)` are exactly the strings of length `r + 1`, and two faces share an
//! edge exactly when their addresses are adjacent in the Sierpiński graph
//! `S(r + 1)`.
//!
//! The root face lists its corners as `(b, c, a)`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{simplicial_vertices, Graph, VertexId};
use crate::io::GraphJson;
use crate::sierpinski::{self, id_of, label_string, pow3, InnerFace, SierpinskiGraph};
use crate::solver::{strong_geodetic_number, SolveLimits};
use crate::witness::{verify_witness, AssignedGeodesic, CoverWitness};
use crate::GeodesicPath;

/// Largest complete level generated (about 266k vertices).
pub const MAX_LEVEL: usize = 11;

pub const A: VertexId = 0;
pub const B: VertexId = 1;
pub const C: VertexId = 2;
const ROOT_CORNERS: [VertexId; 3] = [B, C, A];

/// Level tag `(k, i)`: the `i`-th vertex (1-based) inserted in round `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Level {
    pub k: usize,
    pub i: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Insertion {
    pub vertex: VertexId,
    /// Corners of the face the vertex was inserted into, in slot order.
    pub face: [VertexId; 3],
    /// Address of that face.
    pub address: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub address: Vec<u8>,
    pub corners: [VertexId; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApollonianNetwork {
    pub r: usize,
    pub graph: Graph,
    /// `[a, b, c]`.
    pub base: [VertexId; 3],
    pub level_of: Vec<Option<Level>>,
    pub genealogy: Vec<Insertion>,
    /// Triangular faces other than the outer one, in address order.
    pub faces: Vec<Face>,
    pub complete: bool,
}

fn grow<F>(rounds: usize, mut insert_into: F) -> Result<ApollonianNetwork>
where
    F: FnMut(usize, &[u8]) -> bool,
{
    let mut edges = vec![(A, B), (B, C), (A, C)];
    let mut level_of = vec![None; 3];
    let mut genealogy = Vec::new();
    let mut complete = true;
    let mut faces = vec![Face {
        address: vec![],
        corners: ROOT_CORNERS,
    }];
    for k in 0..rounds {
        let mut next = Vec::with_capacity(faces.len() * 3);
        let mut i = 0;
        for face in faces {
            if !insert_into(k, &face.address) {
                complete = false;
                next.push(face);
                continue;
            }
            let v = level_of.len();
            i += 1;
            level_of.push(Some(Level { k, i }));
            genealogy.push(Insertion {
                vertex: v,
                face: face.corners,
                address: label_string(&face.address),
            });
            edges.extend(face.corners.iter().map(|&x| (x, v)));
            for slot in 0..3 {
                let mut corners = face.corners;
                corners[slot] = v;
                let mut address = face.address.clone();
                address.push(slot as u8);
                next.push(Face { address, corners });
            }
        }
        // Address order keeps the (k, i) numbering lexicographic.
        next.sort_by(|x, y| x.address.cmp(&y.address));
        faces = next;
    }
    let labels = (0..level_of.len())
        .map(|v| {
            let name = match level_of[v] {
                Some(Level { k, i }) => format!("{k},{i}"),
                None => ["a", "b", "c"][v].to_owned(),
            };
            (v, name)
        })
        .collect();
    let graph = Graph::new(level_of.len(), edges)?.with_labels(labels)?;
    Ok(ApollonianNetwork {
        r: rounds.saturating_sub(1),
        graph,
        base: [A, B, C],
        level_of,
        genealogy,
        faces,
        complete,
    })
}

/// The complete network `A(r)`: `r + 1` rounds, levels `0..=r`.
pub fn apollonian(r: usize) -> Result<ApollonianNetwork> {
    if r > MAX_LEVEL {
        return Err(Error::LevelTooLarge {
            kind: "Apollonian",
            level: r,
            max: MAX_LEVEL,
        });
    }
    grow(r + 1, |_, _| true)
}

/// An incomplete network: round `k` fills the face at `address` only when
/// `fill(k, address)` holds. Round 0 always fills the base triangle.
pub fn incomplete_apollonian<F>(rounds: usize, mut fill: F) -> Result<ApollonianNetwork>
where
    F: FnMut(usize, &[u8]) -> bool,
{
    if rounds == 0 || rounds > MAX_LEVEL + 1 {
        return Err(Error::InvalidParameter(format!(
            "round count {rounds} is outside 1..={}",
            MAX_LEVEL + 1
        )));
    }
    let mut net = grow(rounds, |k, a| k == 0 || fill(k, a))?;
    // r is the deepest level actually present.
    net.r = net
        .level_of
        .iter()
        .flatten()
        .map(|l| l.k)
        .max()
        .unwrap_or(0);
    Ok(net)
}

/// `sg(A(r))`: 4 for `r <= 1`, `3^r` otherwise.
pub fn apollonian_sg(r: usize) -> u128 {
    if r <= 1 {
        4
    } else {
        3u128.saturating_pow(r as u32)
    }
}

impl ApollonianNetwork {
    /// Id range of the level-`k` vertices of a complete network.
    pub fn level_range(&self, k: usize) -> std::ops::Range<VertexId> {
        let start = 3 + (pow3(k) - 1) / 2;
        start..start + pow3(k)
    }

    /// `T_r`, the vertices of the last level.
    pub fn last_level(&self) -> Vec<VertexId> {
        self.level_of
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_some_and(|l| l.k == self.r))
            .map(|(v, _)| v)
            .collect()
    }

    /// Address of the face `v` was inserted into.
    pub fn address(&self, v: VertexId) -> Option<Vec<u8>> {
        let idx = v.checked_sub(3)?;
        self.genealogy
            .get(idx)
            .map(|ins| ins.address.bytes().map(|b| b - b'0').collect())
    }

    /// Vertex inserted into the face `address` (complete networks only).
    pub fn vertex_at(&self, address: &[u8]) -> VertexId {
        self.level_range(address.len()).start + id_of(address)
    }

    fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "operation needs a complete Apollonian network".into(),
            ))
        }
    }

    pub fn to_json(&self) -> ApollonianJson {
        ApollonianJson {
            graph: GraphJson::from(&self.graph),
            r: self.r,
            complete: self.complete,
            base: self.base,
            levels: self
                .level_of
                .iter()
                .map(|l| l.map(|l| [l.k, l.i]))
                .collect(),
            genealogy: self.genealogy.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ApollonianJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub r: usize,
    pub complete: bool,
    pub base: [VertexId; 3],
    pub levels: Vec<Option<[usize; 2]>>,
    pub genealogy: Vec<Insertion>,
}

/// Inner dual of `A(r)` with its isomorphism onto `S(r + 1)`.
#[derive(Debug, Clone)]
pub struct InnerDual {
    /// One vertex per inner face (in [`ApollonianNetwork::faces`] order),
    /// adjacent when the faces share an edge.
    pub graph: Graph,
    /// Dual vertex → vertex of `S(r + 1)`.
    pub to_sierpinski: Vec<VertexId>,
    pub sierpinski: SierpinskiGraph,
}

/// Builds the inner dual from the face list and checks, edge by edge, that
/// face addresses give an isomorphism onto `S(r + 1)`.
pub fn inner_dual(net: &ApollonianNetwork) -> Result<InnerDual> {
    net.require_complete()?;
    let mut sides: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    for (f, face) in net.faces.iter().enumerate() {
        let [x, y, z] = face.corners;
        for (u, v) in [(x, y), (y, z), (x, z)] {
            if !net.graph.has_edge(u, v) {
                return Err(Error::Consistency(format!(
                    "face {f} uses non-edge {u}-{v}"
                )));
            }
            sides.entry((u.min(v), u.max(v))).or_default().push(f);
        }
    }
    let mut dual_edges = Vec::new();
    let mut outer = Vec::new();
    for (edge, fs) in &sides {
        match fs.as_slice() {
            [_] => outer.push(*edge),
            [f, g] => dual_edges.push((*f, *g)),
            _ => {
                return Err(Error::Consistency(format!(
                    "edge {edge:?} borders {} faces",
                    fs.len()
                )))
            }
        }
    }
    outer.sort_unstable();
    if outer != [(A, B), (A, C), (B, C)] || sides.len() != net.graph.edge_count() {
        return Err(Error::Consistency(
            "inner faces do not tile the base triangle".into(),
        ));
    }
    let labels = net
        .faces
        .iter()
        .enumerate()
        .map(|(f, face)| (f, label_string(&face.address)))
        .collect();
    let graph = Graph::new(net.faces.len(), dual_edges)?.with_labels(labels)?;

    let target = sierpinski::sierpinski(net.r + 1)?;
    let to_sierpinski: Vec<VertexId> = net.faces.iter().map(|f| id_of(&f.address)).collect();
    let image: BTreeSet<VertexId> = to_sierpinski.iter().copied().collect();
    if image.len() != target.graph.n() || to_sierpinski.len() != target.graph.n() {
        return Err(Error::Consistency("face map is not a bijection".into()));
    }
    if graph.edge_count() != target.graph.edge_count() {
        return Err(Error::Consistency(format!(
            "inner dual has {} edges, S({}) has {}",
            graph.edge_count(),
            net.r + 1,
            target.graph.edge_count()
        )));
    }
    if let Some((f, g)) = graph
        .edges()
        .find(|&(f, g)| !target.graph.has_edge(to_sierpinski[f], to_sierpinski[g]))
    {
        return Err(Error::Consistency(format!(
            "dual edge {f}-{g} does not map to a Sierpiński edge"
        )));
    }
    Ok(InnerDual {
        graph,
        to_sierpinski,
        sierpinski: target,
    })
}

/// Correspondence between `A(r)` and `S(r)`: last-level vertices ↔ vertices,
/// and interior vertices of levels `0..r` ↔ inner faces. The base vertices
/// `a, b, c` have no face partner.
#[derive(Debug, Clone)]
pub struct DualMap {
    /// `(A(r) vertex, S(r) vertex)`, ordered by the first entry.
    pub vertex_map: Vec<(VertexId, VertexId)>,
    /// `(A(r) vertex, index into faces)`, ordered by the first entry.
    pub face_map: Vec<(VertexId, usize)>,
    pub sierpinski: SierpinskiGraph,
    pub faces: Vec<InnerFace>,
}

impl DualMap {
    /// Last-level vertex of `A(r)` paired with Sierpiński vertex `s`.
    pub fn preimage(&self, s: VertexId) -> VertexId {
        // vertex_map is sorted on both coordinates
        self.vertex_map[s].0
    }
}

pub fn dual_map(net: &ApollonianNetwork) -> Result<DualMap> {
    net.require_complete()?;
    let r = net.r;
    if r == 0 {
        return Err(Error::InvalidParameter("dual map needs r >= 1".into()));
    }
    let sier = sierpinski::sierpinski(r)?;
    let faces = sier.inner_faces()?;

    let vertex_map: Vec<(VertexId, VertexId)> = net
        .level_range(r)
        .map(|v| (v, id_of(&net.address(v).expect("inserted vertex"))))
        .collect();
    let face_map: Vec<(VertexId, usize)> = (0..r)
        .flat_map(|k| net.level_range(k))
        .map(|v| {
            let addr = net.address(v).expect("inserted vertex");
            (v, (pow3(addr.len()) - 1) / 2 + id_of(&addr))
        })
        .collect();

    let distinct = |xs: Vec<usize>, size: usize| {
        xs.len() == size && xs.iter().collect::<BTreeSet<_>>().len() == size
    };
    if !distinct(vertex_map.iter().map(|p| p.1).collect(), sier.graph.n()) {
        return Err(Error::Consistency("vertex map is not a bijection".into()));
    }
    if !distinct(face_map.iter().map(|p| p.1).collect(), faces.len()) {
        return Err(Error::Consistency("face map is not a bijection".into()));
    }

    let mut to_s = vec![None; net.graph.n()];
    for &(v, s) in &vertex_map {
        to_s[v] = Some(s);
    }
    // Each interior vertex touches exactly the last-level vertices on the
    // boundary of its face.
    for &(z, f) in &face_map {
        let face = &faces[f];
        if face.prefix != label_string(&net.address(z).unwrap()) {
            return Err(Error::Consistency(format!(
                "vertex {z} paired with wrong face"
            )));
        }
        let touching: BTreeSet<VertexId> = net
            .graph
            .neighbors(z)
            .iter()
            .filter_map(|&w| to_s[w])
            .collect();
        let boundary: BTreeSet<VertexId> = face.boundary.iter().copied().collect();
        if touching != boundary {
            return Err(Error::Consistency(format!(
                "vertex {z} does not touch the boundary of face {f}"
            )));
        }
    }
    // Two last-level vertices are adjacent in S(r) exactly when their parent
    // faces share an edge, i.e. they have two common neighbors.
    let mut shared = BTreeSet::new();
    for (x, y) in net.graph.edges() {
        if to_s[x].is_some() || to_s[y].is_some() {
            continue;
        }
        let common: Vec<VertexId> = net
            .graph
            .neighbors(x)
            .iter()
            .filter(|&&w| to_s[w].is_some() && net.graph.has_edge(w, y))
            .map(|&w| to_s[w].unwrap())
            .collect();
        match common.as_slice() {
            [_] => {}
            [s, t] => {
                shared.insert(((*s).min(*t), (*s).max(*t)));
            }
            _ => {
                return Err(Error::Consistency(format!(
                    "edge {x}-{y} borders {} last-level vertices",
                    common.len()
                )))
            }
        }
    }
    let expected: BTreeSet<(VertexId, VertexId)> = sier.graph.edges().collect();
    if shared != expected {
        return Err(Error::Consistency(
            "vertex map does not preserve adjacency".into(),
        ));
    }

    Ok(DualMap {
        vertex_map,
        face_map,
        sierpinski: sier,
        faces,
    })
}

fn two_step(x: VertexId, z: VertexId, y: VertexId) -> AssignedGeodesic {
    let (x, y) = (x.min(y), x.max(y));
    AssignedGeodesic {
        pair: [x, y],
        path: GeodesicPath(vec![x, z, y]),
    }
}

/// Optimal witness for `A(r)` with `S = T_r`.
///
/// Every interior vertex `z` of level below `r` is covered by `x-z-y`, where
/// `{x, y}` is the base edge of the Sierpiński face paired with `z`; the
/// three base vertices are covered by the paths through them between the
/// extremal pairs. For `r <= 1` the exact solver is used instead.
pub fn apollonian_witness(net: &ApollonianNetwork) -> Result<CoverWitness> {
    net.require_complete()?;
    if net.r <= 1 {
        let solved = strong_geodetic_number(&net.graph, &SolveLimits::default())?;
        return solved
            .optimum()
            .map(|(_, w)| w.clone())
            .ok_or_else(|| Error::Consistency("A(r) for r <= 1 must solve exactly".into()));
    }
    let map = dual_map(net)?;
    let horizontal = map.sierpinski.horizontal_edges();
    let mut geodesics = Vec::new();

    for &(z, f) in &map.face_map {
        let [p, q] = horizontal[map.faces[f].sits_on].endpoints;
        let (x, y) = (map.preimage(p), map.preimage(q));
        if !(net.graph.has_edge(x, z) && net.graph.has_edge(z, y)) {
            return Err(Error::Consistency(format!(
                "vertex {z} is not adjacent to both {x} and {y}"
            )));
        }
        geodesics.push(two_step(x, z, y));
    }

    let ext = map.sierpinski.extremal.map(|s| map.preimage(s));
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        let (x, y) = (ext[i], ext[j]);
        let via: Vec<VertexId> = net
            .base
            .iter()
            .copied()
            .filter(|&b| net.graph.has_edge(b, x) && net.graph.has_edge(b, y))
            .collect();
        let [b] = via.as_slice() else {
            return Err(Error::Consistency(format!(
                "extremal pair {x}, {y} shares {} base vertices",
                via.len()
            )));
        };
        geodesics.push(two_step(x, *b, y));
    }

    let pairs: BTreeSet<[VertexId; 2]> = geodesics.iter().map(|g| g.pair).collect();
    if pairs.len() != geodesics.len() {
        return Err(Error::Consistency("a pair was used twice".into()));
    }
    let witness = CoverWitness::new(net.last_level(), geodesics);
    verify_witness(&net.graph, &witness)
        .map_err(|v| Error::Consistency(format!("constructed witness rejected: {v}")))?;
    Ok(witness)
}

/// `T_r` equals the set of simplicial vertices for `r >= 1`.
pub fn simplicial_is_last_level(net: &ApollonianNetwork) -> bool {
    simplicial_vertices(&net.graph) == net.last_level()
}
