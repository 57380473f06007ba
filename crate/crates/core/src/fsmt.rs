//! Flexible state machine test generation.
//!
//! Phase one asks every test-start state for its shortest in-bounds walk to
//! a test-end state. Phase two then repeatedly draws a random uncovered edge
//! and looks for the shortest in-bounds walk through it. An edge that has no
//! such walk is reported instead of covered; it is never retried.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::Graph;
use crate::model::{LengthBounds, Strategy, SutModel, TestSuite, UncoveredEdge, UncoveredReason};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FsmtConfig {
    pub bounds: LengthBounds,
    pub seed: u64,
    /// Drop phase-one walks that cover no edge not already covered.
    pub skip_redundant_phase1: bool,
}

impl FsmtConfig {
    pub fn new(bounds: LengthBounds, seed: u64) -> Self {
        FsmtConfig {
            bounds,
            seed,
            skip_redundant_phase1: false,
        }
    }
}

pub fn generate_fsmt(model: &SutModel, config: &FsmtConfig) -> Result<TestSuite, Error> {
    let graph = Graph::new(model)?;
    let bounds = config.bounds;
    let starts = graph.test_starts();
    let ends = graph.test_ends();

    let mut uncovered: BTreeSet<usize> = (0..graph.edge_count()).collect();
    let mut walks: Vec<Vec<usize>> = Vec::new();
    let mut infeasible: Vec<usize> = Vec::new();

    for &start in starts {
        if let Some(walk) = graph.shortest_bounded_walk(&[start], ends, bounds) {
            let fresh = walk.iter().filter(|e| uncovered.remove(e)).count();
            if fresh > 0 || !config.skip_redundant_phase1 {
                walks.push(walk);
            }
        }
    }

    let mut rng = SplitMix64::new(config.seed);
    while !uncovered.is_empty() {
        let pick = rng.below(uncovered.len());
        let edge = *uncovered.iter().nth(pick).expect("pick < len");
        uncovered.remove(&edge);
        match graph.shortest_bounded_walk_through(starts, edge, ends, bounds) {
            Some(walk) => {
                for e in &walk {
                    uncovered.remove(e);
                }
                walks.push(walk);
            }
            None => infeasible.push(edge),
        }
    }
    infeasible.sort_unstable();

    Ok(TestSuite {
        paths: walks.iter().map(|w| graph.to_path(w)).collect(),
        strategy: Strategy::Fsmt,
        bounds,
        seed: Some(config.seed),
        uncovered_edges: infeasible
            .into_iter()
            .map(|e| UncoveredEdge {
                edge_id: model.edges[e].id.clone(),
                reason: UncoveredReason::NoFeasibleWalk,
            })
            .collect(),
    })
}
