//! Brute-force reference implementations and small-model builders shared by
//! the integration tests. Nothing here goes through the library's search
//! code; walks are enumerated directly from the model's edge list.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fsmt_core::{Edge, LengthBounds, SutModel, VertexId};
use proptest::prelude::*;

/// Every walk of 1..=max_len edges starting anywhere, as edge positions.
pub fn all_walks(model: &SutModel, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(model: &SutModel, walk: &mut Vec<usize>, max_len: usize, out: &mut Vec<Vec<usize>>) {
        out.push(walk.clone());
        if walk.len() == max_len {
            return;
        }
        let head = &model.edges[*walk.last().unwrap()].target;
        for (i, e) in model.edges.iter().enumerate() {
            if &e.source == head {
                walk.push(i);
                extend(model, walk, max_len, out);
                walk.pop();
            }
        }
    }
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    for i in 0..model.edges.len() {
        extend(model, &mut vec![i], max_len, &mut out);
    }
    out
}

pub fn walk_start<'m>(model: &'m SutModel, walk: &[usize]) -> &'m VertexId {
    &model.edges[walk[0]].source
}

pub fn walk_end<'m>(model: &'m SutModel, walk: &[usize]) -> &'m VertexId {
    &model.edges[*walk.last().unwrap()].target
}

/// Walks from `sources` to `targets` with a length inside `bounds`.
pub fn bounded_walks(
    model: &SutModel,
    sources: &BTreeSet<VertexId>,
    targets: &BTreeSet<VertexId>,
    bounds: LengthBounds,
) -> Vec<Vec<usize>> {
    all_walks(model, bounds.max())
        .into_iter()
        .filter(|w| {
            bounds.contains(w.len())
                && sources.contains(walk_start(model, w))
                && targets.contains(walk_end(model, w))
        })
        .collect()
}

pub fn min_walk_len(
    model: &SutModel,
    sources: &BTreeSet<VertexId>,
    targets: &BTreeSet<VertexId>,
    bounds: LengthBounds,
) -> Option<usize> {
    bounded_walks(model, sources, targets, bounds).iter().map(Vec::len).min()
}

pub fn min_walk_len_through(
    model: &SutModel,
    sources: &BTreeSet<VertexId>,
    via: usize,
    targets: &BTreeSet<VertexId>,
    bounds: LengthBounds,
) -> Option<usize> {
    bounded_walks(model, sources, targets, bounds)
        .iter()
        .filter(|w| w.contains(&via))
        .map(Vec::len)
        .min()
}

/// Edge ids lying on at least one bounded test-start to test-end walk.
pub fn feasible_edges(model: &SutModel, bounds: LengthBounds) -> BTreeSet<String> {
    bounded_walks(model, &model.test_starts, &model.test_ends, bounds)
        .into_iter()
        .flatten()
        .map(|i| model.edges[i].id.clone())
        .collect()
}

/// Edge-id sequences of every bounded test-start to test-end walk.
pub fn bfa_oracle(model: &SutModel, bounds: LengthBounds) -> BTreeSet<Vec<String>> {
    bounded_walks(model, &model.test_starts, &model.test_ends, bounds)
        .into_iter()
        .map(|w| w.into_iter().map(|i| model.edges[i].id.clone()).collect())
        .collect()
}

/// Simple cycles as sets of edge positions: closed walks with no repeated
/// vertex, deduplicated by edge set.
pub fn simple_cycles(model: &SutModel) -> BTreeSet<BTreeSet<usize>> {
    fn go(
        model: &SutModel,
        start: &VertexId,
        at: &VertexId,
        visited: &mut Vec<VertexId>,
        edges: &mut Vec<usize>,
        out: &mut BTreeSet<BTreeSet<usize>>,
    ) {
        for (i, e) in model.edges.iter().enumerate() {
            if &e.source != at {
                continue;
            }
            if &e.target == start {
                edges.push(i);
                out.insert(edges.iter().copied().collect());
                edges.pop();
            } else if !visited.contains(&e.target) {
                visited.push(e.target.clone());
                edges.push(i);
                go(model, start, &e.target, visited, edges, out);
                edges.pop();
                visited.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for v in &model.vertices {
        go(model, v, v, &mut vec![v.clone()], &mut Vec::new(), &mut out);
    }
    out
}

pub fn vid(i: usize) -> VertexId {
    VertexId::new(format!("v{i}"))
}

/// Assembles a valid model from raw indices. `starts` and `ends` are
/// reduced modulo `n` and must be non-empty.
pub fn build_model(n: usize, edges: &[(usize, usize)], starts: &[usize], ends: &[usize]) -> SutModel {
    let starts: BTreeSet<VertexId> = starts.iter().map(|&s| vid(s % n)).collect();
    let ends: BTreeSet<VertexId> = ends.iter().map(|&t| vid(t % n)).collect();
    SutModel {
        vertices: (0..n).map(vid).collect(),
        edges: edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| Edge::new(format!("e{i}"), vid(s % n), vid(t % n)))
            .collect(),
        start_vertex: starts.iter().next().unwrap().clone(),
        machine_ends: ends.iter().take(1).cloned().collect(),
        test_starts: starts,
        test_ends: ends,
    }
}

/// Random valid models with up to `max_v` vertices and `max_e` edges.
pub fn small_model(max_v: usize, max_e: usize) -> impl Strategy<Value = SutModel> {
    (1..=max_v).prop_flat_map(move |n| {
        (
            Just(n),
            prop::collection::vec((0..n, 0..n), 1..=max_e),
            prop::collection::vec(0..n, 1..=n.min(3)),
            prop::collection::vec(0..n, 1..=n.min(3)),
        )
            .prop_map(|(n, edges, s, t)| build_model(n, &edges, &s, &t))
    })
}

pub fn bounds_upto(max: usize) -> impl Strategy<Value = LengthBounds> {
    (1..=max).prop_flat_map(|hi| (1..=hi).prop_map(move |lo| LengthBounds::new(lo, hi).unwrap()))
}

/// Deterministic stream of small models for fixed-count checks.
pub fn seeded_small_models(count: usize, max_v: usize, max_e: usize, seed: u64) -> Vec<SutModel> {
    let mut rng = fsmt_core::SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let n = rng.range_inclusive(1, max_v);
            let m = rng.range_inclusive(1, max_e);
            let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.below(n), rng.below(n))).collect();
            let s: Vec<usize> = (0..rng.range_inclusive(1, n.min(3))).map(|_| rng.below(n)).collect();
            let t: Vec<usize> = (0..rng.range_inclusive(1, n.min(3))).map(|_| rng.below(n)).collect();
            build_model(n, &edges, &s, &t)
        })
        .collect()
}

pub fn multiplicity(model: &SutModel) -> BTreeMap<(VertexId, VertexId), usize> {
    let mut m = BTreeMap::new();
    for e in &model.edges {
        *m.entry((e.source.clone(), e.target.clone())).or_default() += 1;
    }
    m
}
