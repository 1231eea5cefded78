//! JSON formats for monoids, posets, digraphs, graphs and minor models.

use serde::{Deserialize, Serialize};

use crate::algebra::{Monoid, Poset};
use crate::graphcore::{ArcColoredDigraph, SimpleGraph};
use crate::retracts::MinorModel;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid content: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MonoidJson {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PosetJson {
    pub size: usize,
    pub leq: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ArcJson {
    pub color: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DigraphJson {
    pub vertices: Vec<String>,
    pub colors: Vec<String>,
    pub arcs: Vec<ArcJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MinorModelJson {
    pub target: GraphJson,
    pub branch_sets: Vec<Vec<usize>>,
    pub cover_edges: Vec<[usize; 2]>,
}

/// A host file may hold either kind of graph.
#[derive(Debug, Clone)]
pub enum AnyGraph {
    Digraph(ArcColoredDigraph),
    Graph(SimpleGraph),
}

impl AnyGraph {
    pub fn underlying(&self) -> SimpleGraph {
        match self {
            AnyGraph::Digraph(d) => d.underlying_simple_graph(),
            AnyGraph::Graph(g) => g.clone(),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Invalid(e.to_string())
}

pub fn monoid_to_json(m: &Monoid) -> MonoidJson {
    MonoidJson { size: m.size(), identity: m.identity(), table: m.rows() }
}

pub fn monoid_from_json(j: MonoidJson) -> Result<Monoid, IoError> {
    if j.table.len() != j.size {
        return Err(invalid(format!("table has {} rows, size is {}", j.table.len(), j.size)));
    }
    Monoid::new(j.table, j.identity).map_err(invalid)
}

pub fn poset_to_json(p: &Poset) -> PosetJson {
    PosetJson {
        size: p.size(),
        leq: p.leq_matrix().into_iter().map(|r| r.into_iter().map(u8::from).collect()).collect(),
    }
}

pub fn poset_from_json(j: PosetJson) -> Result<Poset, IoError> {
    if j.leq.len() != j.size {
        return Err(invalid(format!("leq has {} rows, size is {}", j.leq.len(), j.size)));
    }
    if j.leq.iter().flatten().any(|&b| b > 1) {
        return Err(invalid("leq entries must be 0 or 1"));
    }
    Poset::new(j.leq.into_iter().map(|r| r.into_iter().map(|b| b == 1).collect()).collect())
        .map_err(invalid)
}

pub fn digraph_to_json(d: &ArcColoredDigraph) -> DigraphJson {
    let arcs = (0..d.color_count())
        .flat_map(|c| d.arcs(c).iter().map(move |&(from, to)| ArcJson { color: c, from, to }))
        .collect();
    DigraphJson { vertices: d.vertex_labels().to_vec(), colors: d.color_labels().to_vec(), arcs }
}

pub fn digraph_from_json(j: DigraphJson) -> Result<ArcColoredDigraph, IoError> {
    let mut classes = vec![Vec::new(); j.colors.len()];
    for a in &j.arcs {
        classes
            .get_mut(a.color)
            .ok_or_else(|| invalid(format!("arc uses unknown color {}", a.color)))?
            .push((a.from, a.to));
    }
    ArcColoredDigraph::new(j.vertices, j.colors, classes).map_err(invalid)
}

pub fn graph_to_json(g: &SimpleGraph) -> GraphJson {
    GraphJson {
        vertices: g.labels().to_vec(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    }
}

pub fn graph_from_json(j: GraphJson) -> Result<SimpleGraph, IoError> {
    SimpleGraph::new(j.vertices, j.edges.into_iter().map(|[u, v]| (u, v)).collect())
        .map_err(invalid)
}

pub fn minor_model_to_json(m: &MinorModel) -> MinorModelJson {
    MinorModelJson {
        target: graph_to_json(&m.target),
        branch_sets: m.branch_sets.clone(),
        cover_edges: m.cover_edges.iter().map(|&(u, v)| [u, v]).collect(),
    }
}

pub fn minor_model_from_json(j: MinorModelJson) -> Result<MinorModel, IoError> {
    Ok(MinorModel {
        target: graph_from_json(j.target)?,
        branch_sets: j.branch_sets,
        cover_edges: j.cover_edges.into_iter().map(|[u, v]| (u, v)).collect(),
    })
}

pub fn parse_monoid(s: &str) -> Result<Monoid, IoError> {
    monoid_from_json(serde_json::from_str(s)?)
}

pub fn parse_poset(s: &str) -> Result<Poset, IoError> {
    poset_from_json(serde_json::from_str(s)?)
}

pub fn parse_digraph(s: &str) -> Result<ArcColoredDigraph, IoError> {
    digraph_from_json(serde_json::from_str(s)?)
}

pub fn parse_graph(s: &str) -> Result<SimpleGraph, IoError> {
    graph_from_json(serde_json::from_str(s)?)
}

/// Digraph if the document has "colors" and "arcs", simple graph if it has "edges".
pub fn parse_any_graph(s: &str) -> Result<AnyGraph, IoError> {
    let v: serde_json::Value = serde_json::from_str(s)?;
    if v.get("arcs").is_some() {
        Ok(AnyGraph::Digraph(digraph_from_json(serde_json::from_value(v)?)?))
    } else if v.get("edges").is_some() {
        Ok(AnyGraph::Graph(graph_from_json(serde_json::from_value(v)?)?))
    } else {
        Err(invalid("expected a digraph (arcs) or a graph (edges)"))
    }
}

pub fn parse_minor_model(s: &str) -> Result<MinorModel, IoError> {
    minor_model_from_json(serde_json::from_str(s)?)
}
