//! Seeded random SUT models for corpus-scale benchmarking.
//!
//! Construction: the test-start and test-end sets are sampled first. A random
//! arborescence rooted at the first vertex keeps the graph weakly connected.
//! Extra edges join pairs not yet joined; their endpoints favour test-start
//! and test-end states, and most of them point forwards along the vertex
//! order so that cycles stay few. Duplicates of existing edges supply
//! parallel edges. The whole draw repeats until some test-start state
//! reaches a test-end state.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{Edge, SutModel, VertexId};
use crate::rng::SplitMix64;

const ATTEMPTS: usize = 1024;
const BACK_LO: usize = 10;
const BACK_HI: usize = 35;
const SET_EDGE_WEIGHT: u8 = 6;
const PAIR_ATTEMPTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorParams {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Lower bound on edges that share endpoints with another edge.
    pub parallel_edge_target: usize,
    pub test_start_count: usize,
    pub test_end_count: usize,
    /// Vertices in both the test-start and the test-end set.
    pub overlap_count: usize,
    /// Percentage of the extra (non-skeleton) edges allowed to point
    /// backwards along the skeleton or loop; the rest point forwards. Only
    /// backward edges close cycles. 100 means uniformly random pairs.
    pub back_edge_percent: u8,
    /// How much likelier a test-start or test-end state is than any other
    /// state to be drawn as an endpoint of an extra edge. 1 is uniform.
    pub set_edge_weight: u8,
    pub seed: u64,
}

impl GeneratorParams {
    fn duplicates_needed(&self) -> usize {
        self.parallel_edge_target.div_ceil(2)
    }

    fn check(&self) -> Result<(), Error> {
        let n = self.vertex_count;
        if n < 2 {
            return Err(Error::InfeasibleParams("vertex_count must be at least 2"));
        }
        if self.edge_count < n - 1 {
            return Err(Error::InfeasibleParams("edge_count must be at least vertex_count - 1"));
        }
        if self.parallel_edge_target > self.edge_count {
            return Err(Error::InfeasibleParams("parallel_edge_target exceeds edge_count"));
        }
        if self.edge_count - self.duplicates_needed() < n - 1 {
            return Err(Error::InfeasibleParams(
                "too few edges left for a connected skeleton after duplication",
            ));
        }
        if self.test_start_count == 0 || self.test_end_count == 0 {
            return Err(Error::InfeasibleParams("test start and end sets must be non-empty"));
        }
        if self.test_start_count > n || self.test_end_count > n {
            return Err(Error::InfeasibleParams("test start/end set larger than vertex_count"));
        }
        if self.overlap_count > self.test_start_count.min(self.test_end_count) {
            return Err(Error::InfeasibleParams("overlap_count exceeds a set size"));
        }
        if self.test_start_count + self.test_end_count - self.overlap_count > n {
            return Err(Error::InfeasibleParams("start and end sets do not fit in the vertices"));
        }
        Ok(())
    }
}

/// Parameters sampled around the benchmark corpus profile: 5 to 40
/// vertices (mean near 17), 10 to 80 edges, mean degree near 4.4, parallel
/// edges in a bit over half the models and a handful of test-start and
/// test-end states, most of them shared.
pub fn profile_params(seed: u64) -> GeneratorParams {
    let mut rng = SplitMix64::new(seed);
    // the smaller of two draws favours small models
    let n = rng.range_inclusive(5, 40).min(rng.range_inclusive(5, 40));
    // edges per vertex in [1.6, 2.8]
    let per_vertex_tenths = rng.range_inclusive(16, 28);
    let edges = (n * per_vertex_tenths + 5) / 10;
    let edges = edges.clamp(10.max(n - 1), 80);
    // none in about 45% of models, a heavy bundle count in about 15%
    let parallel = match rng.below(100) {
        0..=44 => 0,
        45..=84 => rng.range_inclusive(1, (edges / 2).clamp(1, 14)),
        _ if edges * 2 / 3 >= 20 => rng.range_inclusive(20, (edges * 2 / 3).min(30)),
        _ => rng.range_inclusive(1, edges / 2),
    };
    let starts = rng.range_inclusive(1, n.min(7));
    let ends = rng.range_inclusive(1, n.min(8));
    let overlap_lo = (starts + ends).saturating_sub(n);
    // most of the smaller set is shared
    let overlap = ((starts.min(ends) * 4 + 2) / 5).max(overlap_lo);
    // an acyclic model whose only start state is its only end state has no walk
    let acyclic_ok = overlap < starts.max(ends);
    let back_edge_percent = if acyclic_ok && rng.below(40) < 3 {
        0
    } else {
        rng.range_inclusive(BACK_LO, BACK_HI) as u8
    };
    GeneratorParams {
        vertex_count: n,
        edge_count: edges,
        parallel_edge_target: parallel,
        test_start_count: starts,
        test_end_count: ends,
        overlap_count: overlap,
        back_edge_percent,
        set_edge_weight: SET_EDGE_WEIGHT,
        seed: rng.next_u64(),
    }
}

fn token(prefix: char, index: usize, count: usize) -> String {
    let width = format!("{}", count.saturating_sub(1)).len();
    format!("{prefix}{index:0width$}")
}

fn random_edges(params: &GeneratorParams, rng: &mut SplitMix64, weights: &[usize]) -> Vec<(usize, usize)> {
    let n = params.vertex_count;
    let duplicates = params.duplicates_needed();
    let base = params.edge_count - duplicates;

    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.below(v), v)).collect();
    let mut used: BTreeSet<(usize, usize)> = pairs.iter().copied().collect();
    let total_weight: usize = weights.iter().sum();
    let pick_vertex = |rng: &mut SplitMix64| {
        let mut r = rng.below(total_weight);
        weights
            .iter()
            .position(|&w| {
                if r < w {
                    return true;
                }
                r -= w;
                false
            })
            .expect("r < total weight")
    };
    while pairs.len() < base {
        let want_back = rng.below(100) < usize::from(params.back_edge_percent);
        let mut chosen = None;
        for _ in 0..PAIR_ATTEMPTS {
            let (a, b) = (pick_vertex(rng), pick_vertex(rng));
            let pair = match (want_back, a == b) {
                (true, _) => (a.max(b), a.min(b)),
                (false, true) => continue,
                (false, false) => (a.min(b), a.max(b)),
            };
            if !used.contains(&pair) {
                chosen = Some(pair);
                break;
            }
        }
        let pair = chosen.unwrap_or_else(|| {
            let free: Vec<(usize, usize)> = (0..n)
                .flat_map(|s| (0..n).map(move |t| (s, t)))
                .filter(|p| !used.contains(p))
                .collect();
            if free.is_empty() {
                // every ordered pair is taken; repeat one
                pairs[rng.below(pairs.len())]
            } else {
                free[rng.below(free.len())]
            }
        });
        used.insert(pair);
        pairs.push(pair);
    }

    let mut multiplicity: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in &pairs {
        *multiplicity.entry(*p).or_default() += 1;
    }
    let parallel = |m: &BTreeMap<(usize, usize), usize>| m.values().filter(|&&c| c > 1).sum::<usize>();
    while parallel(&multiplicity) < params.parallel_edge_target {
        let missing = params.parallel_edge_target - parallel(&multiplicity);
        // a fresh pair adds two parallel edges, an existing bundle adds one
        let want_single = missing >= 2;
        let candidates: Vec<(usize, usize)> = multiplicity
            .iter()
            .filter(|(_, &c)| (c == 1) == want_single)
            .map(|(p, _)| *p)
            .collect();
        let candidates = if candidates.is_empty() {
            multiplicity.keys().copied().collect()
        } else {
            candidates
        };
        let pick = candidates[rng.below(candidates.len())];
        *multiplicity.get_mut(&pick).expect("known pair") += 1;
        pairs.push(pick);
    }
    // accidental parallels in the base can leave spare edges
    while pairs.len() < params.edge_count {
        pairs.push(pairs[rng.below(pairs.len())]);
    }
    rng.shuffle(&mut pairs);
    pairs
}

/// Whether a walk of at least one edge leads from a start to an end vertex.
fn reaches(n: usize, pairs: &[(usize, usize)], starts: &[usize], ends: &[usize]) -> bool {
    let mut seen = alloc::vec![false; n];
    let mut todo: Vec<usize> = Vec::new();
    for &(s, t) in pairs {
        if starts.contains(&s) && !seen[t] {
            seen[t] = true;
            todo.push(t);
        }
    }
    while let Some(v) = todo.pop() {
        for &(s, t) in pairs {
            if s == v && !seen[t] {
                seen[t] = true;
                todo.push(t);
            }
        }
    }
    ends.iter().any(|&e| seen[e])
}

pub fn generate_model(params: &GeneratorParams) -> Result<SutModel, Error> {
    params.check()?;
    let n = params.vertex_count;
    let mut rng = SplitMix64::new(params.seed);

    for _ in 0..ATTEMPTS {
        let mut order: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut order);
        let o = params.overlap_count;
        let start_only = params.test_start_count - o;
        let end_only = params.test_end_count - o;
        let starts: Vec<usize> = order[..o].iter().chain(&order[o..o + start_only]).copied().collect();
        let ends: Vec<usize> = order[..o]
            .iter()
            .chain(&order[o + start_only..o + start_only + end_only])
            .copied()
            .collect();
        let mut weights = alloc::vec![1; n];
        for &v in starts.iter().chain(&ends) {
            weights[v] = usize::from(params.set_edge_weight.max(1));
        }
        let pairs = random_edges(params, &mut rng, &weights);
        if reaches(n, &pairs, &starts, &ends) {
            let machine_start = starts[rng.below(starts.len())];
            let machine_end = ends[rng.below(ends.len())];

            let name = |v: usize| VertexId::new(token('s', v, n));
            return Ok(SutModel {
                vertices: (0..n).map(name).collect(),
                edges: pairs
                    .iter()
                    .enumerate()
                    .map(|(i, &(s, t))| Edge::new(token('t', i, pairs.len()), name(s), name(t)))
                    .collect(),
                start_vertex: name(machine_start),
                machine_ends: [name(machine_end)].into(),
                test_starts: starts.iter().map(|&v| name(v)).collect(),
                test_ends: ends.iter().map(|&v| name(v)).collect(),
            });
        }
    }
    Err(Error::InfeasibleParams("no sampled test-start set reaches a test-end set"))
}
