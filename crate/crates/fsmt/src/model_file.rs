//! JSON encoding of [`SutModel`].
//!
//! ```json
//! {
//!   "vertices": ["A", "B"],
//!   "edges": [{ "id": "e1", "source": "A", "target": "B", "label": "go" }],
//!   "start_vertex": "A",
//!   "machine_ends": ["B"],
//!   "test_starts": ["A"],
//!   "test_ends": ["B"]
//! }
//! ```
//!
//! `label` is optional. Edge order is kept as written.

use serde::{Deserialize, Serialize};

use fsmt_core::{validate_model, Edge, SutModel, VertexId};

use crate::FormatError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
    start_vertex: String,
    machine_ends: Vec<String>,
    test_starts: Vec<String>,
    test_ends: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    source: String,
    target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

fn tokens<'a>(set: impl IntoIterator<Item = &'a VertexId>) -> Vec<String> {
    set.into_iter().map(|v| v.as_str().to_owned()).collect()
}

pub fn serialize_model(model: &SutModel) -> String {
    let doc = ModelDoc {
        vertices: tokens(&model.vertices),
        edges: model
            .edges
            .iter()
            .map(|e| EdgeDoc {
                id: e.id.clone(),
                source: e.source.as_str().to_owned(),
                target: e.target.as_str().to_owned(),
                label: e.label.clone(),
            })
            .collect(),
        start_vertex: model.start_vertex.as_str().to_owned(),
        machine_ends: tokens(&model.machine_ends),
        test_starts: tokens(&model.test_starts),
        test_ends: tokens(&model.test_ends),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("model document serializes");
    text.push('\n');
    text
}

/// Parses and validates a model document.
pub fn parse_model(text: &str) -> Result<SutModel, FormatError> {
    let doc: ModelDoc = serde_json::from_str(text)?;
    let model = SutModel {
        vertices: doc.vertices.into_iter().map(VertexId::from).collect(),
        edges: doc
            .edges
            .into_iter()
            .map(|e| Edge {
                id: e.id,
                source: e.source.into(),
                target: e.target.into(),
                label: e.label,
            })
            .collect(),
        start_vertex: doc.start_vertex.into(),
        machine_ends: doc.machine_ends.into_iter().map(VertexId::from).collect(),
        test_starts: doc.test_starts.into_iter().map(VertexId::from).collect(),
        test_ends: doc.test_ends.into_iter().map(VertexId::from).collect(),
    };
    let report = validate_model(&model);
    if report.is_empty() {
        Ok(model)
    } else {
        Err(FormatError::Validation(report))
    }
}
