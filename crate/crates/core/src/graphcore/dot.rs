use std::fmt::Write;

use super::{ArcColoredDigraph, SimpleGraph};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// One edge statement per arc, carrying its color index and label.
pub fn digraph_to_dot(d: &ArcColoredDigraph) -> String {
    let mut s = String::from("digraph D {\n");
    for (v, label) in d.vertex_labels().iter().enumerate() {
        let _ = writeln!(s, "  {v} [label={}];", quote(label));
    }
    for c in 0..d.color_count() {
        let label = quote(&d.color_labels()[c]);
        for &(u, v) in d.arcs(c) {
            let _ = writeln!(s, "  {u} -> {v} [\"color-index\"={c}, \"color-label\"={label}];");
        }
    }
    s.push_str("}\n");
    s
}

pub fn graph_to_dot(g: &SimpleGraph) -> String {
    let mut s = String::from("graph G {\n");
    for (v, label) in g.labels().iter().enumerate() {
        let _ = writeln!(s, "  {v} [label={}];", quote(label));
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}
