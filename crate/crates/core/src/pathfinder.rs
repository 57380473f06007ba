//! Shortest walks whose length must fall inside a window.
//!
//! Plain shortest-path search cannot honour a lower length bound, so the
//! search runs breadth-first over (vertex, depth) layers. Within a layer,
//! edges are relaxed in ascending model order and the first parent recorded
//! for a vertex is kept, which makes every returned walk reproducible.
//! Among several targets reached at the same depth the lexicographically
//! smallest wins.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::Graph;
use crate::model::{LengthBounds, SutModel, TestPath, VertexId};

/// Sources, targets and the length window for a bounded walk search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkQuery {
    pub sources: BTreeSet<VertexId>,
    pub targets: BTreeSet<VertexId>,
    pub bounds: LengthBounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reach {
    Unreached,
    Root,
    Via(usize),
}

/// Layer `d` records how each vertex was first reached by a walk of exactly `d` edges.
struct Layers {
    layers: Vec<Vec<Reach>>,
}

impl Layers {
    fn start(graph: &Graph<'_>, roots: &[usize]) -> Self {
        let mut first = vec![Reach::Unreached; graph.vertex_count()];
        for &r in roots {
            first[r] = Reach::Root;
        }
        Layers { layers: vec![first] }
    }

    fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    /// Adds one layer; returns false once the frontier is empty.
    fn grow(&mut self, graph: &Graph<'_>) -> bool {
        let prev = self.layers.last().expect("at least the root layer");
        let mut next = vec![Reach::Unreached; graph.vertex_count()];
        let mut any = false;
        for e in 0..graph.edge_count() {
            let t = graph.target(e);
            if prev[graph.source(e)] != Reach::Unreached && next[t] == Reach::Unreached {
                next[t] = Reach::Via(e);
                any = true;
            }
        }
        self.layers.push(next);
        any
    }

    fn reached(&self, depth: usize, vertex: usize) -> bool {
        self.layers[depth][vertex] != Reach::Unreached
    }

    fn first_reached(&self, depth: usize, candidates: &[usize]) -> Option<usize> {
        candidates.iter().copied().find(|&v| self.reached(depth, v))
    }

    fn walk_to(&self, graph: &Graph<'_>, depth: usize, vertex: usize) -> Vec<usize> {
        let mut edges = Vec::with_capacity(depth);
        let mut v = vertex;
        for d in (1..=depth).rev() {
            match self.layers[d][v] {
                Reach::Via(e) => {
                    edges.push(e);
                    v = graph.source(e);
                }
                _ => unreachable!("broken parent chain at depth {d}"),
            }
        }
        debug_assert_eq!(self.layers[0][v], Reach::Root);
        edges.reverse();
        edges
    }
}

impl Graph<'_> {
    /// Shortest walk from any of `sources` to any of `targets` with a length
    /// inside `bounds`, as edge indices. Both vertex slices must be ascending.
    pub fn shortest_bounded_walk(
        &self,
        sources: &[usize],
        targets: &[usize],
        bounds: LengthBounds,
    ) -> Option<Vec<usize>> {
        if sources.is_empty() || targets.is_empty() {
            return None;
        }
        let mut layers = Layers::start(self, sources);
        while layers.depth() < bounds.max() {
            if !layers.grow(self) {
                return None;
            }
            let d = layers.depth();
            if d >= bounds.min() {
                if let Some(t) = layers.first_reached(d, targets) {
                    return Some(layers.walk_to(self, d, t));
                }
            }
        }
        None
    }

    /// Shortest walk of the form prefix, `via`, suffix where the prefix runs
    /// from a source to the tail of `via` and the suffix from its head to a
    /// target. Either part may be empty. Ties on total length go to the
    /// shorter prefix.
    pub fn shortest_bounded_walk_through(
        &self,
        sources: &[usize],
        via: usize,
        targets: &[usize],
        bounds: LengthBounds,
    ) -> Option<Vec<usize>> {
        if sources.is_empty() || targets.is_empty() {
            return None;
        }
        let horizon = bounds.max() - 1;
        let tail = self.source(via);

        let mut prefix = Layers::start(self, sources);
        while prefix.depth() < horizon && prefix.grow(self) {}
        let prefix_ok: Vec<bool> = (0..=horizon)
            .map(|d| d <= prefix.depth() && prefix.reached(d, tail))
            .collect();

        let mut suffix = Layers::start(self, &[self.target(via)]);
        while suffix.depth() < horizon && suffix.grow(self) {}
        let suffix_end: Vec<Option<usize>> = (0..=horizon)
            .map(|d| {
                if d <= suffix.depth() {
                    suffix.first_reached(d, targets)
                } else {
                    None
                }
            })
            .collect();

        for total in bounds.min()..=bounds.max() {
            for (pre_len, _) in prefix_ok.iter().enumerate().take(total).filter(|(_, ok)| **ok) {
                let suf_len = total - 1 - pre_len;
                if let Some(end) = suffix_end[suf_len] {
                    let mut walk = prefix.walk_to(self, pre_len, tail);
                    walk.push(via);
                    walk.extend(suffix.walk_to(self, suf_len, end));
                    return Some(walk);
                }
            }
        }
        None
    }

    fn indices_of(&self, set: &BTreeSet<VertexId>) -> Result<Vec<usize>, Error> {
        let mut out = set
            .iter()
            .map(|v| self.vertex_index(v).ok_or_else(|| Error::UnknownVertex(v.as_str().into())))
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        Ok(out)
    }
}

/// Shortest walk answering `query`, or `None` if no walk fits the bounds.
pub fn shortest_bounded_walk(model: &SutModel, query: &WalkQuery) -> Result<Option<TestPath>, Error> {
    let graph = Graph::new(model)?;
    let sources = graph.indices_of(&query.sources)?;
    let targets = graph.indices_of(&query.targets)?;
    Ok(graph
        .shortest_bounded_walk(&sources, &targets, query.bounds)
        .map(|w| graph.to_path(&w)))
}

/// Shortest bounded walk from `sources` to `targets` that traverses edge `via`.
pub fn shortest_bounded_walk_through_edge(
    model: &SutModel,
    sources: &BTreeSet<VertexId>,
    via: &str,
    targets: &BTreeSet<VertexId>,
    bounds: LengthBounds,
) -> Result<Option<TestPath>, Error> {
    let graph = Graph::new(model)?;
    let via = graph.edge_index(via).ok_or_else(|| Error::UnknownEdgeId(via.into()))?;
    let sources = graph.indices_of(sources)?;
    let targets = graph.indices_of(targets)?;
    Ok(graph
        .shortest_bounded_walk_through(&sources, via, &targets, bounds)
        .map(|w| graph.to_path(&w)))
}
