//! Graph serialization: JSON (round-trip, carries roles), edge list
//! (round-trip, structure only) and DOT (export only).
//!
//! JSON schema:
//! `{"vertices":[{"id":0,"role":{"kind":"plain"}},...],"edges":[[0,1],...]}`
//! with edges sorted lexicographically as `u < v` pairs. The edge list holds
//! one `u v` pair per line in the same order; it cannot represent roles or
//! isolated vertices.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Role, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    EdgeList,
}

/// Edge lists allocate one slot per id up to the largest mentioned, so a
/// hostile line like `0 18446744073709551615` must not be taken literally.
const MAX_EDGELIST_VERTEX_ID: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("json parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("invalid graph: {0}")]
    Structure(String),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: usize,
    role: Role,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    edges: Vec<[usize; 2]>,
}

pub fn to_json(g: &Graph) -> String {
    let doc = JsonGraph {
        vertices: g
            .vertices()
            .map(|v| JsonVertex {
                id: v.index(),
                role: g.role(v).clone(),
            })
            .collect(),
        edges: g.edges().map(|(u, v)| [u.index(), v.index()]).collect(),
    };
    serde_json::to_string(&doc).expect("graph serialization cannot fail")
}

pub fn parse_json(text: &str) -> Result<Graph, ParseError> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    let count = doc.vertices.len();
    let mut roles: Vec<Option<Role>> = vec![None; count];
    for v in doc.vertices {
        if v.id >= count {
            return Err(ParseError::Structure(format!(
                "vertex id {} out of range for {} vertices",
                v.id, count
            )));
        }
        if roles[v.id].replace(v.role).is_some() {
            return Err(ParseError::Structure(format!("duplicate vertex id {}", v.id)));
        }
    }
    let mut builder = GraphBuilder::new();
    for role in roles {
        builder.add_vertex(role.expect("all slots filled once ids are dense and unique"));
    }
    for [u, v] in doc.edges {
        builder
            .add_edge(VertexId(u), VertexId(v))
            .map_err(|e| ParseError::Structure(e.to_string()))?;
    }
    Ok(builder.finalize())
}

pub fn to_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a string cannot fail");
    }
    out
}

pub fn parse_edgelist(text: &str) -> Result<Graph, ParseError> {
    let mut edges = Vec::new();
    let mut max_id = None::<usize>;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let mut field = |name: &str| -> Result<usize, ParseError> {
            let token = parts.next().ok_or_else(|| ParseError::EdgeList {
                line,
                message: format!("missing {name} vertex"),
            })?;
            token.parse().map_err(|_| ParseError::EdgeList {
                line,
                message: format!("invalid {name} vertex {token:?}"),
            })
        };
        let u = field("first")?;
        let v = field("second")?;
        if parts.next().is_some() {
            return Err(ParseError::EdgeList {
                line,
                message: "expected exactly two fields".into(),
            });
        }
        if u == v {
            return Err(ParseError::EdgeList {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        if u.max(v) > MAX_EDGELIST_VERTEX_ID {
            return Err(ParseError::EdgeList {
                line,
                message: format!(
                    "vertex id {} exceeds the supported maximum {MAX_EDGELIST_VERTEX_ID}",
                    u.max(v)
                ),
            });
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let mut builder = GraphBuilder::new();
    if let Some(max) = max_id {
        for _ in 0..=max {
            builder.add_vertex(Role::plain());
        }
    }
    for (u, v) in edges {
        builder
            .add_edge(VertexId(u), VertexId(v))
            .expect("ids allocated and loops rejected above");
    }
    Ok(builder.finalize())
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {v} [label=\"{}\"];", g.role(v)).expect("string write");
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").expect("string write");
    }
    out.push_str("}\n");
    out
}

pub fn serialize(g: &Graph, format: Format) -> String {
    match format {
        Format::Json => to_json(g),
        Format::Dot => to_dot(g),
        Format::EdgeList => to_edgelist(g),
    }
}

/// Parses `text` in a round-trip capable format (DOT is export-only).
pub fn parse(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Json => parse_json(text),
        Format::EdgeList => parse_edgelist(text),
        Format::Dot => Err(ParseError::Structure(
            "dot is an export-only format".into(),
        )),
    }
}
