//! JSON and DOT serialization.
//!
//! Graph JSON is `{"n": .., "edges": [[u, v], ..], "labels": {..}}` with
//! edges canonicalized to `u < v` in lexicographic order, so a graph always
//! serializes to the same bytes. Unknown top-level fields are ignored on
//! read, which lets enriched dumps (Apollonian, Sierpiński, gadget) load
//! as plain graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<VertexId, String>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().clone(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = crate::error::Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        Graph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))?.with_labels(j.labels)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn graph_to_json(g: &Graph) -> String {
    to_json_string(&GraphJson::from(g)).expect("graph JSON always serializes")
}

pub fn graph_from_json(s: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(s)?;
    Graph::try_from(j)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT. Nodes are named by id and carry their label, if any.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        match g.label(v) {
            Some(l) => writeln!(out, "  {v} [label={}];", quote(l)),
            None => writeln!(out, "  {v};"),
        }
        .unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Undirected DOT using labels as node names. Falls back to ids for
/// unlabeled vertices; callers are responsible for label uniqueness.
pub fn to_dot_by_label(g: &Graph) -> String {
    let name = |v: VertexId| quote(&g.display_name(v));
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        writeln!(out, "  {};", name(v)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", name(u), name(v)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn json_shape() {
        let g = generators::path(3);
        let s = graph_to_json(&g);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["edges"], serde_json::json!([[0, 1], [1, 2]]));
        assert!(v.get("labels").is_none());
    }

    #[test]
    fn labels_and_extra_fields() {
        let s = r#"{"n": 2, "edges": [[1, 0], [0, 1]], "labels": {"1": "b"}, "extra": true}"#;
        let g = graph_from_json(s).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.label(1), Some("b"));
        assert_eq!(g.label(0), None);
        let again = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            graph_from_json("{\"n\": 2"),
            Err(crate::error::Error::Parse(_))
        ));
        assert!(graph_from_json(r#"{"n": 2, "edges": [[0, 2]]}"#).is_err());
    }

    #[test]
    fn dot_output() {
        let g = generators::path(2)
            .with_labels(BTreeMap::from([(0, "a\"".to_owned())]))
            .unwrap();
        assert_eq!(
            to_dot(&g),
            "graph G {\n  0 [label=\"a\\\"\"];\n  1;\n  0 -- 1;\n}\n"
        );
        assert_eq!(
            to_dot_by_label(&g),
            "graph G {\n  \"a\\\"\";\n  \"1\";\n  \"a\\\"\" -- \"1\";\n}\n"
        );
    }
}
