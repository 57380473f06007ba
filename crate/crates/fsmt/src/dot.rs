//! Graphviz rendering of a model, optionally with one test path in bold.
//!
//! Test-start states are filled green, test-end states red and states in
//! both sets yellow. Vertices are emitted in lexicographic order and edges in
//! model order, so output is byte-stable.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fsmt_core::{SutModel, TestPath};

fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render_dot(model: &SutModel, highlight: Option<&TestPath>) -> String {
    let bold: BTreeSet<&str> = highlight
        .map(|p| p.edge_ids.iter().map(String::as_str).collect())
        .unwrap_or_default();
    let mut vertices: Vec<_> = model.vertices.iter().collect();
    vertices.sort();

    let mut out = String::from("digraph sut {\n");
    for v in vertices {
        let fill = match (model.test_starts.contains(v), model.test_ends.contains(v)) {
            (true, true) => Some("yellow"),
            (true, false) => Some("green"),
            (false, true) => Some("red"),
            (false, false) => None,
        };
        match fill {
            Some(color) => {
                let _ = writeln!(out, "  {} [style=filled, fillcolor={color}];", quote(v.as_str()));
            }
            None => {
                let _ = writeln!(out, "  {};", quote(v.as_str()));
            }
        }
    }
    for e in &model.edges {
        let label = match &e.label {
            Some(l) => format!("{}: {l}", e.id),
            None => e.id.clone(),
        };
        let emphasis = if bold.contains(e.id.as_str()) {
            ", style=bold, penwidth=3"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{emphasis}];",
            quote(e.source.as_str()),
            quote(e.target.as_str()),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}
