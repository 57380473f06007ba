//! Brute-force baseline: every walk of an allowed length that starts in a
//! test-start state and ends in a test-end state.
//!
//! Walks of `N + 1` edges are the N-switch sequences, so enumerating lengths
//! `min..=max` covers N from `min - 1` to `max - 1`. The start filter is
//! applied by only expanding from test-start states and the end filter when
//! a walk is emitted; the resulting set is the same as enumerating and then
//! filtering.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::Graph;
use crate::model::{LengthBounds, Strategy, SutModel, TestSuite, UncoveredEdge, UncoveredReason};

pub const DEFAULT_WALK_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfaConfig {
    pub bounds: LengthBounds,
    /// Upper limit on candidate walks visited during enumeration.
    pub walk_cap: usize,
}

impl BfaConfig {
    pub fn new(bounds: LengthBounds) -> Self {
        BfaConfig {
            bounds,
            walk_cap: DEFAULT_WALK_CAP,
        }
    }
}

struct Enumerator<'g, 'm> {
    graph: &'g Graph<'m>,
    bounds: LengthBounds,
    cap: usize,
    is_end: Vec<bool>,
    visited: usize,
    stack: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Enumerator<'_, '_> {
    /// Depth-first over out-edges in ascending order, without recursion.
    fn run_from(&mut self, start: usize) -> Result<(), Error> {
        // (vertex, next out-edge slot) per level
        let mut frames: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(frame) = frames.last_mut() {
            let (vertex, slot) = *frame;
            let out = self.graph.out_edges(vertex);
            if self.stack.len() == self.bounds.max() || slot == out.len() {
                frames.pop();
                self.stack.pop();
                continue;
            }
            frame.1 += 1;
            let e = out[slot];
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::WalkCapExceeded {
                    cap: self.cap,
                    depth: self.stack.len() + 1,
                });
            }
            self.stack.push(e);
            let head = self.graph.target(e);
            if self.bounds.contains(self.stack.len()) && self.is_end[head] {
                self.found.push(self.stack.clone());
            }
            frames.push((head, 0));
        }
        Ok(())
    }
}

pub fn generate_bfa(model: &SutModel, config: &BfaConfig) -> Result<TestSuite, Error> {
    let graph = Graph::new(model)?;
    let mut is_end = vec![false; graph.vertex_count()];
    for &v in graph.test_ends() {
        is_end[v] = true;
    }
    let mut walker = Enumerator {
        graph: &graph,
        bounds: config.bounds,
        cap: config.walk_cap,
        is_end,
        visited: 0,
        stack: Vec::with_capacity(config.bounds.max()),
        found: Vec::new(),
    };
    for &start in graph.test_starts() {
        walker.run_from(start)?;
    }
    let mut walks = walker.found;
    walks.sort_unstable();

    let mut covered = vec![false; graph.edge_count()];
    for &e in walks.iter().flatten() {
        covered[e] = true;
    }

    Ok(TestSuite {
        paths: walks.iter().map(|w| graph.to_path(w)).collect(),
        strategy: Strategy::Bfa,
        bounds: config.bounds,
        seed: None,
        uncovered_edges: covered
            .iter()
            .enumerate()
            .filter(|(_, c)| !**c)
            .map(|(e, _)| UncoveredEdge {
                edge_id: model.edges[e].id.clone(),
                reason: UncoveredReason::NoFeasibleWalk,
            })
            .collect(),
    })
}
