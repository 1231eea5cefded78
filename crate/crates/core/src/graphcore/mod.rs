//! Arc-colored digraphs, simple graphs and walks.

mod digraph;
mod dot;
mod simple;
mod walk;

pub use digraph::{ArcColoredDigraph, DegreeStats, DigraphBuilder};
pub use dot::{digraph_to_dot, graph_to_dot};
pub use simple::SimpleGraph;
pub use walk::{map_walk, Walk};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("not a walk: {0}")]
    NotAWalk(String),
}
