//! The three-layer gadget reducing domination to strong geodesic covers.
//!
//! From `G` on `n` vertices the gadget stacks a copy of `G` (top layer), a
//! clique `x'` (middle layer) and pendant vertices `x''` (bottom layer), with
//! rungs `x-x'` and `x'-x''`. Vertex `x` of `G` becomes `x`, `n + x` and
//! `2n + x`. A set `D` dominates `G` exactly when `D` plus the bottom layer is
//! strong geodetic in the gadget, so `sg(gadget) = γ(G) + n`.

use std::time::Instant;

use serde::Serialize;

use crate::domination::{dominating_number, undominated_vertex, DominatingWitness};
use crate::error::{Error, Result};
use crate::geodesic::GeodesicPath;
use crate::graph::{Graph, VertexId};
use crate::io::GraphJson;
use crate::solver::{find_assignment, strong_geodetic_number, CoverOutcome, SolveLimits};
use crate::witness::{verify_witness, AssignedGeodesic, CoverWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Top,
    Middle,
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGadget {
    pub graph: Graph,
    /// The input graph `G`.
    pub source: Graph,
}

impl LayeredGadget {
    /// `|V(G)|`.
    pub fn base_n(&self) -> usize {
        self.source.n()
    }

    pub fn top(&self, x: VertexId) -> VertexId {
        x
    }

    pub fn middle(&self, x: VertexId) -> VertexId {
        self.base_n() + x
    }

    pub fn bottom(&self, x: VertexId) -> VertexId {
        2 * self.base_n() + x
    }

    pub fn layer_of(&self, v: VertexId) -> Layer {
        match v / self.base_n() {
            0 => Layer::Top,
            1 => Layer::Middle,
            _ => Layer::Bottom,
        }
    }

    /// The vertex of `G` that `v` is a copy of.
    pub fn origin(&self, v: VertexId) -> VertexId {
        v % self.base_n()
    }

    pub fn layer(&self, layer: Layer) -> Vec<VertexId> {
        let n = self.base_n();
        let start = match layer {
            Layer::Top => 0,
            Layer::Middle => n,
            Layer::Bottom => 2 * n,
        };
        (start..start + n).collect()
    }

    pub fn to_json(&self) -> GadgetJson {
        GadgetJson {
            graph: GraphJson::from(&self.graph),
            layers: Layers {
                top: self.layer(Layer::Top),
                middle: self.layer(Layer::Middle),
                bottom: self.layer(Layer::Bottom),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Layers {
    pub top: Vec<VertexId>,
    pub middle: Vec<VertexId>,
    pub bottom: Vec<VertexId>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub layers: Layers,
}

pub fn build_gadget(g: &Graph) -> Result<LayeredGadget> {
    g.require_connected()?;
    let n = g.n();
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    for x in 0..n {
        edges.extend((x + 1..n).map(|y| (n + x, n + y)));
        edges.push((x, n + x));
        edges.push((n + x, 2 * n + x));
    }
    let labels = (0..n)
        .flat_map(|x| {
            let name = g.display_name(x);
            [
                (x, name.clone()),
                (n + x, format!("{name}'")),
                (2 * n + x, format!("{name}''")),
            ]
        })
        .collect();
    let graph = Graph::new(3 * n, edges)?.with_labels(labels)?;
    Ok(LayeredGadget {
        graph,
        source: g.clone(),
    })
}

fn assigned(path: Vec<VertexId>) -> AssignedGeodesic {
    AssignedGeodesic {
        pair: [path[0], *path.last().unwrap()],
        path: GeodesicPath(path),
    }
}

/// Strong geodetic witness `D ∪ V''` built from a dominating set `D`.
///
/// Each top vertex `y` outside `D` rides on `x-y-y'-y''` for its smallest
/// dominator `x`; the middle layer is covered by the star of bottom pairs
/// `{0'', v''}` through `0'-v'`.
pub fn lift_dominating_to_sg(
    gadget: &LayeredGadget,
    dominating: &DominatingWitness,
) -> Result<CoverWitness> {
    let g = &gadget.source;
    let n = g.n();
    for &x in &dominating.set {
        g.check_vertex(x)?;
    }
    if let Some(vertex) = undominated_vertex(g, &dominating.set) {
        return Err(Error::NotDominating { vertex });
    }
    let mut in_d = vec![false; n];
    for &x in &dominating.set {
        in_d[x] = true;
    }

    let mut geodesics = Vec::new();
    for y in (0..n).filter(|&y| !in_d[y]) {
        let x = *g
            .neighbors(y)
            .iter()
            .find(|&&x| in_d[x])
            .expect("dominated vertices have a dominator");
        geodesics.push(assigned(vec![x, y, gadget.middle(y), gadget.bottom(y)]));
    }
    if n == 1 {
        geodesics.push(assigned(vec![0, gadget.middle(0), gadget.bottom(0)]));
    } else {
        for v in 1..n {
            geodesics.push(assigned(vec![
                gadget.bottom(0),
                gadget.middle(0),
                gadget.middle(v),
                gadget.bottom(v),
            ]));
        }
    }
    let set = dominating
        .set
        .iter()
        .copied()
        .chain(gadget.layer(Layer::Bottom));
    Ok(CoverWitness::new(set, geodesics))
}

/// Drops middle-layer vertices from the witness set and re-solves the cover
/// for the smaller set.
pub fn normalize_witness(
    gadget: &LayeredGadget,
    witness: &CoverWitness,
    limits: &SolveLimits,
) -> Result<CoverWitness> {
    let kept: Vec<VertexId> = witness
        .set
        .iter()
        .copied()
        .filter(|&v| gadget.layer_of(v) != Layer::Middle)
        .collect();
    if kept.len() == witness.set.len() {
        return Ok(witness.clone());
    }
    match find_assignment(&gadget.graph, &kept, limits)? {
        CoverOutcome::Covered(w) => Ok(w),
        CoverOutcome::NoCover => Err(Error::Consistency(
            "dropping middle-layer vertices lost coverage".into(),
        )),
        CoverOutcome::Indeterminate => Err(Error::Indeterminate),
    }
}

/// Reads a dominating set of `G` off a verified, normalized witness.
pub fn extract_dominating_from_sg(
    gadget: &LayeredGadget,
    witness: &CoverWitness,
) -> Result<DominatingWitness> {
    verify_witness(&gadget.graph, witness)?;
    if let Some(&v) = witness
        .set
        .iter()
        .find(|&&v| gadget.layer_of(v) == Layer::Middle)
    {
        return Err(Error::NotNormalized(v));
    }
    let set: Vec<VertexId> = witness
        .set
        .iter()
        .copied()
        .filter(|&v| gadget.layer_of(v) == Layer::Top)
        .collect();
    if let Some(vertex) = undominated_vertex(&gadget.source, &set) {
        return Err(Error::NotDominating { vertex });
    }
    Ok(DominatingWitness { set })
}

#[derive(Debug, Clone, Serialize)]
pub struct Runtimes {
    pub domination_ms: f64,
    pub strong_geodetic_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub m: usize,
    pub gamma: usize,
    pub sg_gadget: usize,
    pub identity_holds: bool,
    /// Every bottom vertex is in the minimum witness.
    pub bottom_layer_in_witness: bool,
    /// Normalizing the minimum witness kept it valid and no larger.
    pub normalization_ok: bool,
    /// The dominating set read off the normalized witness has size γ.
    pub extracted_is_minimum: bool,
    /// The lift of a minimum dominating set verifies with size γ + n.
    pub lift_verifies: bool,
    pub runtimes: Runtimes,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.identity_holds
            && self.bottom_layer_in_witness
            && self.normalization_ok
            && self.extracted_is_minimum
            && self.lift_verifies
    }
}

/// Solves both sides exactly and checks `sg(gadget) = γ(G) + n` along with
/// the structural facts behind it.
pub fn check_equivalence(g: &Graph, limits: &SolveLimits) -> Result<EquivalenceReport> {
    let gadget = build_gadget(g)?;
    let n = g.n();

    let start = Instant::now();
    let dom = dominating_number(g, limits)?;
    let domination_ms = start.elapsed().as_secs_f64() * 1e3;
    let (gamma, dom_witness) = dom.optimum().ok_or(Error::Indeterminate)?;

    let start = Instant::now();
    let sg = strong_geodetic_number(&gadget.graph, limits)?;
    let strong_geodetic_ms = start.elapsed().as_secs_f64() * 1e3;
    let (sg_gadget, witness) = sg.optimum().ok_or(Error::Indeterminate)?;

    let bottom_layer_in_witness = gadget
        .layer(Layer::Bottom)
        .iter()
        .all(|v| witness.set.binary_search(v).is_ok());

    let normalized = normalize_witness(&gadget, witness, limits)?;
    let normalization_ok =
        normalized.size() <= witness.size() && verify_witness(&gadget.graph, &normalized).is_ok();
    let extracted_is_minimum =
        extract_dominating_from_sg(&gadget, &normalized).is_ok_and(|d| d.set.len() == gamma);

    let lift_verifies = lift_dominating_to_sg(&gadget, dom_witness)
        .is_ok_and(|w| w.size() == gamma + n && verify_witness(&gadget.graph, &w).is_ok());

    Ok(EquivalenceReport {
        n,
        m: g.edge_count(),
        gamma,
        sg_gadget,
        identity_holds: sg_gadget == gamma + n,
        bottom_layer_in_witness,
        normalization_ok,
        extracted_is_minimum,
        lift_verifies,
        runtimes: Runtimes {
            domination_ms,
            strong_geodetic_ms,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::simplicial_vertices;

    #[test]
    fn k2_gadget_shape() {
        let gadget = build_gadget(&generators::path(2)).unwrap();
        assert_eq!(gadget.graph.n(), 6);
        assert_eq!(gadget.graph.edge_count(), 6);
        assert_eq!(gadget.graph.label(4), Some("0''"));
    }

    #[test]
    fn edge_count_formula() {
        for g in generators::connected_catalogue(5).unwrap() {
            let (n, m) = (g.n(), g.edge_count());
            let gadget = build_gadget(&g).unwrap();
            assert_eq!(gadget.graph.n(), 3 * n);
            assert_eq!(gadget.graph.edge_count(), m + n * (n - 1) / 2 + 2 * n);
        }
    }

    #[test]
    fn layer_structure() {
        let g = generators::cycle(5);
        let gadget = build_gadget(&g).unwrap();
        let top = gadget.layer(Layer::Top);
        let middle = gadget.layer(Layer::Middle);
        let bottom = gadget.layer(Layer::Bottom);
        assert!(gadget.graph.is_clique(&middle));
        for (i, &u) in bottom.iter().enumerate() {
            assert_eq!(gadget.graph.degree(u), 1);
            assert!(bottom[i + 1..]
                .iter()
                .all(|&v| !gadget.graph.has_edge(u, v)));
        }
        for (x, y) in g.edges() {
            assert!(gadget.graph.has_edge(top[x], top[y]));
        }
        assert_eq!(gadget.layer_of(7), Layer::Middle);
        assert_eq!(gadget.origin(12), 2);
        // pendant vertices are simplicial
        assert_eq!(simplicial_vertices(&gadget.graph), bottom);
    }

    #[test]
    fn lift_k2() {
        let gadget = build_gadget(&generators::path(2)).unwrap();
        let w = lift_dominating_to_sg(&gadget, &DominatingWitness { set: vec![0] }).unwrap();
        assert_eq!(w.set, vec![0, 4, 5]);
        let paths: Vec<Vec<VertexId>> = w.geodesics.iter().map(|g| g.path.0.clone()).collect();
        assert_eq!(paths, vec![vec![0, 1, 3, 5], vec![4, 2, 3, 5]]);
        assert_eq!(verify_witness(&gadget.graph, &w), Ok(()));
    }

    #[test]
    fn lift_p3_and_round_trip() {
        let gadget = build_gadget(&generators::path(3)).unwrap();
        let d = DominatingWitness { set: vec![1] };
        let w = lift_dominating_to_sg(&gadget, &d).unwrap();
        assert_eq!(w.size(), 4);
        assert_eq!(verify_witness(&gadget.graph, &w), Ok(()));
        assert_eq!(extract_dominating_from_sg(&gadget, &w).unwrap(), d);
    }

    #[test]
    fn lift_single_vertex() {
        let gadget = build_gadget(&Graph::new(1, []).unwrap()).unwrap();
        let w = lift_dominating_to_sg(&gadget, &DominatingWitness { set: vec![0] }).unwrap();
        assert_eq!(verify_witness(&gadget.graph, &w), Ok(()));
    }

    #[test]
    fn lift_rejects_non_dominating() {
        let gadget = build_gadget(&generators::path(4)).unwrap();
        assert_eq!(
            lift_dominating_to_sg(&gadget, &DominatingWitness { set: vec![0] }),
            Err(Error::NotDominating { vertex: 2 })
        );
    }

    #[test]
    fn extract_requires_normalized() {
        let gadget = build_gadget(&generators::path(2)).unwrap();
        let mut w = lift_dominating_to_sg(&gadget, &DominatingWitness { set: vec![0] }).unwrap();
        w.set.push(2);
        w.set.sort_unstable();
        assert_eq!(
            extract_dominating_from_sg(&gadget, &w),
            Err(Error::NotNormalized(2))
        );
        let normalized = normalize_witness(&gadget, &w, &SolveLimits::default()).unwrap();
        assert!(extract_dominating_from_sg(&gadget, &normalized).is_ok());
    }

    #[test]
    fn equivalence_small_cases() {
        let limits = SolveLimits::default();
        for (g, gamma, sg) in [
            (generators::path(2), 1, 3),
            (generators::path(3), 1, 4),
            (generators::cycle(4), 2, 6),
        ] {
            let report = check_equivalence(&g, &limits).unwrap();
            assert_eq!((report.gamma, report.sg_gadget), (gamma, sg));
            assert!(report.holds(), "{report:?}");
        }
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::new(2, []).unwrap();
        assert_eq!(build_gadget(&g), Err(Error::Disconnected));
    }
}
