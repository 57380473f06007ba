//! Test suite generation for state machines modelled as directed multigraphs.
//!
//! A [`SutModel`] names the states a test may start and end in. Two
//! strategies turn it into a [`TestSuite`]:
//!
//! * [`generate_fsmt`] greedily covers every edge with the shortest walk that
//!   fits a length window and connects a test-start state to a test-end state.
//! * [`generate_bfa`] enumerates every such walk, the N-switch style baseline.
//!
//! [`suite_metrics`] and [`model_stats`] measure the results, and
//! [`generate_model`] produces seeded random models for benchmarking.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

mod bfa;
mod error;
mod fsmt;
mod generator;
mod graph;
mod metrics;
mod model;
mod pathfinder;
mod rng;

pub use bfa::{generate_bfa, BfaConfig, DEFAULT_WALK_CAP};
pub use error::Error;
pub use fsmt::{generate_fsmt, FsmtConfig};
pub use generator::{generate_model, profile_params, GeneratorParams};
pub use graph::Graph;
pub use metrics::{model_stats, suite_metrics, ModelStats, Ratio, SuiteMetrics, DEFAULT_CYCLE_CAP};
pub use model::{
    is_valid_token, path_is_chained, validate_model, Edge, LengthBounds, Strategy, SutModel,
    TestPath, TestSuite, UncoveredEdge, UncoveredReason, VertexId, Violation, ViolationCode,
};
pub use pathfinder::{shortest_bounded_walk, shortest_bounded_walk_through_edge, WalkQuery};
pub use rng::SplitMix64;
