//! Suite metrics and descriptive model statistics.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::Graph;
use crate::model::{SutModel, TestSuite};

pub type Ratio = num_rational::Ratio<u64>;

pub const DEFAULT_CYCLE_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteMetrics {
    /// Steps over all paths, duplicates included.
    pub total_length: u64,
    pub path_count: u64,
    /// Zero for an empty suite.
    pub avg_length: Ratio,
    /// Distinct edges over total steps; `None` for an empty suite.
    pub unique_ratio: Option<Ratio>,
    /// Distinct edges over model edges.
    pub edge_coverage: Ratio,
    pub distinct_edges: u64,
}

fn ratio(numer: u64, denom: u64) -> Ratio {
    if denom == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(numer, denom)
    }
}

pub fn suite_metrics(model: &SutModel, suite: &TestSuite) -> Result<SuiteMetrics, Error> {
    let known: BTreeSet<&str> = model.edges.iter().map(|e| e.id.as_str()).collect();
    if let Some(id) = suite
        .paths
        .iter()
        .flat_map(|p| p.edge_ids.iter())
        .find(|id| !known.contains(id.as_str()))
    {
        return Err(Error::UnknownEdgeId(id.clone()));
    }
    let total = suite.total_length() as u64;
    let count = suite.paths.len() as u64;
    let distinct = suite.covered_edge_ids().len() as u64;
    Ok(SuiteMetrics {
        total_length: total,
        path_count: count,
        avg_length: ratio(total, count),
        unique_ratio: (total > 0).then(|| Ratio::new(distinct, total)),
        edge_coverage: ratio(distinct, model.edges.len() as u64),
        distinct_edges: distinct,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelStats {
    pub vertex_count: u64,
    pub edge_count: u64,
    /// Simple directed cycles, one per distinct edge set; capped.
    pub simple_cycle_count: u64,
    /// Set when enumeration stopped at the cycle cap.
    pub cycles_truncated: bool,
    pub avg_cycle_length: Ratio,
    /// Edges sharing their ordered (source, target) with another edge.
    pub parallel_edge_count: u64,
    /// `2 |E| / |V|`.
    pub avg_node_degree: Ratio,
    pub test_start_count: u64,
    pub test_end_count: u64,
    pub start_end_overlap_count: u64,
}

pub fn model_stats(model: &SutModel, cycle_cap: u64) -> Result<ModelStats, Error> {
    let graph = Graph::new(model)?;
    let n = graph.vertex_count();

    let mut multiplicity: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for e in 0..graph.edge_count() {
        *multiplicity.entry((graph.source(e), graph.target(e))).or_default() += 1;
    }
    let parallel: u64 = multiplicity.values().filter(|&&m| m > 1).sum();

    let cycles = count_cycles(n, &multiplicity, cycle_cap.max(1));

    Ok(ModelStats {
        vertex_count: n as u64,
        edge_count: graph.edge_count() as u64,
        simple_cycle_count: cycles.count,
        cycles_truncated: cycles.truncated,
        avg_cycle_length: ratio(cycles.total_length, cycles.count),
        parallel_edge_count: parallel,
        avg_node_degree: ratio(2 * graph.edge_count() as u64, n as u64),
        test_start_count: model.test_starts.len() as u64,
        test_end_count: model.test_ends.len() as u64,
        start_end_overlap_count: model.test_starts.intersection(&model.test_ends).count() as u64,
    })
}

#[derive(Debug, Default)]
struct CycleTally {
    count: u64,
    total_length: u64,
    truncated: bool,
    cap: u64,
}

impl CycleTally {
    /// Records `copies` edge-distinct cycles of `len` edges. Returns false
    /// once a cycle had to be dropped for lack of room.
    fn add(&mut self, len: u64, copies: u64) -> bool {
        let room = self.cap - self.count;
        let take = copies.min(room);
        self.count += take;
        self.total_length += take * len;
        if copies > room {
            self.truncated = true;
        }
        !self.truncated
    }
}

/// Elementary circuits are enumerated on the underlying simple digraph with
/// Johnson's algorithm; each circuit then stands for the product of the
/// multiplicities of its arcs, one per choice of parallel edge.
fn count_cycles(n: usize, multiplicity: &BTreeMap<(usize, usize), u64>, cap: u64) -> CycleTally {
    let mut tally = CycleTally {
        cap,
        ..CycleTally::default()
    };
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in multiplicity.keys() {
        if s == t {
            if !tally.add(1, multiplicity[&(s, t)]) {
                return tally;
            }
        } else {
            adj[s].push(t);
        }
    }

    let mut johnson = Johnson {
        adj: &adj,
        multiplicity,
        start: 0,
        in_scc: vec![false; n],
        blocked: vec![false; n],
        blocked_by: vec![BTreeSet::new(); n],
        stack: Vec::new(),
        tally: &mut tally,
        stopped: false,
    };
    for start in 0..n {
        let scc = johnson.scc_of(start);
        if scc.iter().filter(|&&inside| inside).count() < 2 {
            continue;
        }
        johnson.start = start;
        johnson.in_scc = scc;
        for v in 0..n {
            johnson.blocked[v] = false;
            johnson.blocked_by[v].clear();
        }
        johnson.circuit(start);
        if johnson.stopped {
            break;
        }
    }
    tally
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    multiplicity: &'a BTreeMap<(usize, usize), u64>,
    start: usize,
    in_scc: Vec<bool>,
    blocked: Vec<bool>,
    blocked_by: Vec<BTreeSet<usize>>,
    stack: Vec<usize>,
    tally: &'a mut CycleTally,
    stopped: bool,
}

impl Johnson<'_> {
    /// Strongly connected component of `s` within the vertices `>= s`.
    fn scc_of(&self, s: usize) -> Vec<bool> {
        let n = self.adj.len();
        let mut forward = vec![false; n];
        let mut todo = vec![s];
        forward[s] = true;
        while let Some(v) = todo.pop() {
            for &w in &self.adj[v] {
                if w >= s && !forward[w] {
                    forward[w] = true;
                    todo.push(w);
                }
            }
        }
        let mut backward = vec![false; n];
        backward[s] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for v in s..n {
                if forward[v] && !backward[v] && self.adj[v].iter().any(|&w| backward[w]) {
                    backward[v] = true;
                    changed = true;
                }
            }
        }
        forward.iter().zip(&backward).map(|(f, b)| *f && *b).collect()
    }

    fn unblock(&mut self, v: usize) {
        let mut todo = vec![v];
        while let Some(u) = todo.pop() {
            if self.blocked[u] {
                self.blocked[u] = false;
                todo.extend(core::mem::take(&mut self.blocked_by[u]));
            }
        }
    }

    fn emit(&mut self) {
        let mut copies = 1u64;
        for i in 0..self.stack.len() {
            let from = self.stack[i];
            let to = self.stack.get(i + 1).copied().unwrap_or(self.start);
            copies = copies.saturating_mul(self.multiplicity[&(from, to)]);
        }
        if !self.tally.add(self.stack.len() as u64, copies) {
            self.stopped = true;
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let adj = self.adj;
        for &w in &adj[v] {
            if self.stopped {
                break;
            }
            if !self.in_scc[w] {
                continue;
            }
            if w == self.start {
                self.emit();
                found = true;
            } else if !self.blocked[w] && self.circuit(w) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &adj[v] {
                if self.in_scc[w] {
                    self.blocked_by[w].insert(v);
                }
            }
        }
        self.stack.pop();
        found
    }
}
