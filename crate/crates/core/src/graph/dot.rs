//! Graphviz export.

use std::fmt::Write;

use super::{ReductionGraph, VertexId, TARGET};
use crate::pointer::PointerString;

/// Position of a vertex in string order, with `t` after every `Ii`/`I'i`.
fn rank(v: VertexId) -> usize {
    if v == TARGET {
        usize::MAX
    } else {
        v
    }
}

fn edge_label(label: &PointerString) -> String {
    if label.is_empty() {
        "λ".to_string()
    } else {
        label.to_string()
    }
}

impl ReductionGraph {
    /// Renders the graph as an undirected DOT graph. Vertices appear in index
    /// order; each edge is written once, oriented from the end nearer to `s`
    /// in string order (`t` counts as last, and reality labels are read in
    /// that direction). Edges are sorted so equal graphs always produce
    /// identical text.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("graph reduction {\n");
        for v in &self.parts().vertices {
            let label = match v.label {
                Some(id) => id.to_string(),
                None => v.name.to_string(),
            };
            let _ = writeln!(out, "  {} [label=\"{}\"];", v.name, label);
        }

        let mut reality: Vec<(usize, usize, PointerString)> = self
            .parts()
            .reality
            .iter()
            .map(|e| {
                if rank(e.from) <= rank(e.to) {
                    (e.from, e.to, e.label.clone())
                } else {
                    (e.to, e.from, e.label.inverse())
                }
            })
            .collect();
        reality.sort_by_key(|(a, b, label)| (rank(*a), rank(*b), label.clone()));
        for (a, b, label) in &reality {
            let _ = writeln!(
                out,
                "  {} -- {} [style=solid, label=\"{}\"];",
                self.parts().vertices[*a].name,
                self.parts().vertices[*b].name,
                edge_label(label)
            );
        }

        let mut desire: Vec<(usize, usize)> = self
            .parts()
            .desire
            .iter()
            .map(|e| if rank(e.a) <= rank(e.b) { (e.a, e.b) } else { (e.b, e.a) })
            .collect();
        desire.sort_by_key(|&(a, b)| (rank(a), rank(b)));
        for (a, b) in &desire {
            let _ = writeln!(
                out,
                "  {} -- {} [style=dashed];",
                self.parts().vertices[*a].name, self.parts().vertices[*b].name
            );
        }
        out.push_str("}\n");
        out
    }
}
