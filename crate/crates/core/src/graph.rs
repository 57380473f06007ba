use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{validate_model, SutModel, TestPath, VertexId};

/// Index-based view of a validated [`SutModel`].
///
/// Vertex indices follow lexicographic token order; edge indices follow
/// model order. Out-edge lists are ascending by edge index.
#[derive(Debug, Clone)]
pub struct Graph<'m> {
    model: &'m SutModel,
    vertices: Vec<&'m VertexId>,
    vertex_index: BTreeMap<&'m VertexId, usize>,
    edge_index: BTreeMap<&'m str, usize>,
    sources: Vec<usize>,
    targets: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    test_starts: Vec<usize>,
    test_ends: Vec<usize>,
}

impl<'m> Graph<'m> {
    pub fn new(model: &'m SutModel) -> Result<Self, Error> {
        let report = validate_model(model);
        if !report.is_empty() {
            return Err(Error::InvalidModel(report));
        }
        let mut vertices: Vec<&VertexId> = model.vertices.iter().collect();
        vertices.sort();
        let vertex_index: BTreeMap<&VertexId, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edge_index = model
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        let sources: Vec<usize> = model.edges.iter().map(|e| vertex_index[&e.source]).collect();
        let targets: Vec<usize> = model.edges.iter().map(|e| vertex_index[&e.target]).collect();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        for (e, &s) in sources.iter().enumerate() {
            out_edges[s].push(e);
        }
        let test_starts = model.test_starts.iter().map(|v| vertex_index[v]).collect();
        let test_ends = model.test_ends.iter().map(|v| vertex_index[v]).collect();
        Ok(Graph {
            model,
            vertices,
            vertex_index,
            edge_index,
            sources,
            targets,
            out_edges,
            test_starts,
            test_ends,
        })
    }

    pub fn model(&self) -> &'m SutModel {
        self.model
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.sources.len()
    }

    pub fn vertex(&self, index: usize) -> &'m VertexId {
        self.vertices[index]
    }

    pub fn vertex_index(&self, id: &VertexId) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn source(&self, edge: usize) -> usize {
        self.sources[edge]
    }

    pub fn target(&self, edge: usize) -> usize {
        self.targets[edge]
    }

    pub fn out_edges(&self, vertex: usize) -> &[usize] {
        &self.out_edges[vertex]
    }

    /// Test-start vertex indices, ascending.
    pub fn test_starts(&self) -> &[usize] {
        &self.test_starts
    }

    /// Test-end vertex indices, ascending.
    pub fn test_ends(&self) -> &[usize] {
        &self.test_ends
    }

    pub fn to_path(&self, edges: &[usize]) -> TestPath {
        TestPath::new(edges.iter().map(|&e| self.model.edges[e].id.as_str()))
    }

    /// Edge indices of `path`, failing on the first unknown id.
    pub fn path_indices(&self, path: &TestPath) -> Result<Vec<usize>, Error> {
        path.edge_ids
            .iter()
            .map(|id| self.edge_index(id).ok_or_else(|| Error::UnknownEdgeId(id.clone())))
            .collect()
    }
}
