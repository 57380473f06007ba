//! The SUT model, test paths and suites, and structural validation.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// A state of the system under test. Tokens order lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: impl Into<String>) -> Self {
        VertexId(token.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

/// Identifier tokens must be non-empty and free of whitespace, `,`, `;` and `->`.
///
/// The same rule applies to edge ids, since suites join them with `;` in CSV.
pub fn is_valid_token(token: &str) -> bool {
    !token.is_empty()
        && !token.contains("->")
        && !token.chars().any(|c| c.is_whitespace() || c == ',' || c == ';')
}

/// A transition. Parallel edges are separate records with distinct ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: VertexId,
    pub target: VertexId,
    pub label: Option<String>,
}

impl Edge {
    pub fn new(id: impl Into<String>, source: impl Into<VertexId>, target: impl Into<VertexId>) -> Self {
        Edge {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// Directed multigraph with a machine start state, machine end states and
/// the sets of states in which a test may start and end.
///
/// Construction performs no checks; run [`validate_model`] before use.
/// Edge order is significant: it is the canonical iteration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SutModel {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
    pub start_vertex: VertexId,
    pub machine_ends: BTreeSet<VertexId>,
    pub test_starts: BTreeSet<VertexId>,
    pub test_ends: BTreeSet<VertexId>,
}

impl SutModel {
    pub fn edge_position(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }
}

/// Inclusive window on the number of edges in a test path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LengthBounds {
    min: usize,
    max: usize,
}

impl LengthBounds {
    pub fn new(min: usize, max: usize) -> Result<Self, Error> {
        if min == 0 || min > max {
            return Err(Error::InvalidBounds { min, max });
        }
        Ok(LengthBounds { min, max })
    }

    pub fn min(&self) -> usize {
        self.min
    }

    pub fn max(&self) -> usize {
        self.max
    }

    pub fn contains(&self, len: usize) -> bool {
        self.min <= len && len <= self.max
    }
}

impl fmt::Display for LengthBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.min, self.max)
    }
}

/// A test case: a walk through the model, given as edge ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TestPath {
    pub edge_ids: Vec<String>,
}

impl TestPath {
    pub fn new<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        TestPath {
            edge_ids: ids.into_iter().map(Into::into).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    /// Source of the first edge and target of the last.
    pub fn endpoints<'m>(&self, model: &'m SutModel) -> Result<(&'m VertexId, &'m VertexId), Error> {
        let lookup = |id: &String| model.edge(id).ok_or_else(|| Error::UnknownEdgeId(id.clone()));
        match (self.edge_ids.first(), self.edge_ids.last()) {
            (Some(first), Some(last)) => Ok((&lookup(first)?.source, &lookup(last)?.target)),
            _ => Err(Error::UnknownEdgeId(String::new())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Fsmt,
    Bfa,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Fsmt => "FSMT",
            Strategy::Bfa => "BFA",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UncoveredReason {
    NoFeasibleWalk,
}

impl UncoveredReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            UncoveredReason::NoFeasibleWalk => "NO_FEASIBLE_WALK",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncoveredEdge {
    pub edge_id: String,
    pub reason: UncoveredReason,
}

/// Generated test paths plus how they were generated and what they miss.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSuite {
    pub paths: Vec<TestPath>,
    pub strategy: Strategy,
    pub bounds: LengthBounds,
    /// Present for FSMT only.
    pub seed: Option<u64>,
    /// In model edge order.
    pub uncovered_edges: Vec<UncoveredEdge>,
}

impl TestSuite {
    pub fn total_length(&self) -> usize {
        self.paths.iter().map(TestPath::len).sum()
    }

    pub fn covered_edge_ids(&self) -> BTreeSet<&str> {
        self.paths
            .iter()
            .flat_map(|p| p.edge_ids.iter().map(String::as_str))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    InvalidVertexToken,
    DuplicateVertex,
    InvalidEdgeId,
    DuplicateEdgeId,
    DanglingEdgeSource,
    DanglingEdgeTarget,
    UnknownStartVertex,
    UnknownMachineEnd,
    UnknownTestStart,
    UnknownTestEnd,
    EmptyTestStarts,
    EmptyTestEnds,
    StartVertexNotInTestStarts,
    MachineEndsNotInTestEnds,
}

impl ViolationCode {
    pub fn as_str(&self) -> &'static str {
        use ViolationCode::*;
        match self {
            InvalidVertexToken => "INVALID_VERTEX_TOKEN",
            DuplicateVertex => "DUPLICATE_VERTEX",
            InvalidEdgeId => "INVALID_EDGE_ID",
            DuplicateEdgeId => "DUPLICATE_EDGE_ID",
            DanglingEdgeSource => "DANGLING_EDGE_SOURCE",
            DanglingEdgeTarget => "DANGLING_EDGE_TARGET",
            UnknownStartVertex => "UNKNOWN_START_VERTEX",
            UnknownMachineEnd => "UNKNOWN_MACHINE_END",
            UnknownTestStart => "UNKNOWN_TEST_START",
            UnknownTestEnd => "UNKNOWN_TEST_END",
            EmptyTestStarts => "EMPTY_TEST_STARTS",
            EmptyTestEnds => "EMPTY_TEST_ENDS",
            StartVertexNotInTestStarts => "START_VERTEX_NOT_IN_TEST_STARTS",
            MachineEndsNotInTestEnds => "MACHINE_ENDS_NOT_IN_TEST_ENDS",
        }
    }
}

/// One broken model invariant and the ids involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub ids: Vec<String>,
}

impl Violation {
    fn new(code: ViolationCode, ids: Vec<String>) -> Self {
        Violation { code, ids }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code.as_str())?;
        if !self.ids.is_empty() {
            write!(f, " [{}]", self.ids.join(", "))?;
        }
        Ok(())
    }
}

/// Returns every broken invariant; an empty report means the model is valid.
pub fn validate_model(model: &SutModel) -> Vec<Violation> {
    use ViolationCode::*;
    let mut report = Vec::new();

    let mut seen = BTreeSet::new();
    for v in &model.vertices {
        if !is_valid_token(v.as_str()) {
            report.push(Violation::new(InvalidVertexToken, vec![v.as_str().to_owned()]));
        }
        if !seen.insert(v) {
            report.push(Violation::new(DuplicateVertex, vec![v.as_str().to_owned()]));
        }
    }
    let vertices = seen;

    let mut edge_ids = BTreeMap::new();
    for e in &model.edges {
        if !is_valid_token(&e.id) {
            report.push(Violation::new(InvalidEdgeId, vec![e.id.clone()]));
        }
        if edge_ids.insert(e.id.as_str(), ()).is_some() {
            report.push(Violation::new(DuplicateEdgeId, vec![e.id.clone()]));
        }
        if !vertices.contains(&e.source) {
            report.push(Violation::new(
                DanglingEdgeSource,
                vec![e.id.clone(), e.source.as_str().to_owned()],
            ));
        }
        if !vertices.contains(&e.target) {
            report.push(Violation::new(
                DanglingEdgeTarget,
                vec![e.id.clone(), e.target.as_str().to_owned()],
            ));
        }
    }

    if !vertices.contains(&model.start_vertex) {
        report.push(Violation::new(
            UnknownStartVertex,
            vec![model.start_vertex.as_str().to_owned()],
        ));
    }
    let unknown = |set: &BTreeSet<VertexId>, code, report: &mut Vec<Violation>| {
        for v in set.iter().filter(|v| !vertices.contains(v)) {
            report.push(Violation::new(code, vec![v.as_str().to_owned()]));
        }
    };
    unknown(&model.machine_ends, UnknownMachineEnd, &mut report);
    unknown(&model.test_starts, UnknownTestStart, &mut report);
    unknown(&model.test_ends, UnknownTestEnd, &mut report);

    if model.test_starts.is_empty() {
        report.push(Violation::new(EmptyTestStarts, Vec::new()));
    }
    if model.test_ends.is_empty() {
        report.push(Violation::new(EmptyTestEnds, Vec::new()));
    }
    if !model.test_starts.contains(&model.start_vertex) {
        report.push(Violation::new(
            StartVertexNotInTestStarts,
            vec![model.start_vertex.as_str().to_owned()],
        ));
    }
    let stray_ends: Vec<String> = model
        .machine_ends
        .difference(&model.test_ends)
        .map(|v| v.as_str().to_owned())
        .collect();
    if !stray_ends.is_empty() {
        report.push(Violation::new(MachineEndsNotInTestEnds, stray_ends));
    }

    report
}

/// Whether each edge of `path` starts where the previous one ended.
pub fn path_is_chained(model: &SutModel, path: &TestPath) -> Result<bool, Error> {
    let edges = path
        .edge_ids
        .iter()
        .map(|id| model.edge(id).ok_or_else(|| Error::UnknownEdgeId(id.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(edges.windows(2).all(|w| w[0].target == w[1].source))
}
