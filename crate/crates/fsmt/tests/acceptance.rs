//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and then
//! asserts on it, so `cargo test --test acceptance -- --nocapture` shows the
//! whole board.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fsmt::bench::{self, BenchmarkConfig, BenchmarkReport, RecordStatus};
use fsmt::model_file::{parse_model, serialize_model};
use fsmt::suite_format::{export_suite, parse_suite_csv, parse_suite_json, SuiteFormat};
use fsmt_core::{
    generate_bfa, generate_fsmt, generate_model, path_is_chained, profile_params, shortest_bounded_walk,
    shortest_bounded_walk_through_edge, BfaConfig, FsmtConfig, LengthBounds, Ratio, SplitMix64, Strategy, SutModel,
    VertexId, WalkQuery, DEFAULT_CYCLE_CAP, DEFAULT_WALK_CAP,
};

const CORPUS_SEED: u64 = 2020;
const CORPUS_SIZE: usize = 40;
const FSMT_SEED: u64 = 1;

fn bounds(min: usize, max: usize) -> LengthBounds {
    LengthBounds::new(min, max).unwrap()
}

fn windows() -> [LengthBounds; 3] {
    [bounds(1, 2), bounds(3, 4), bounds(1, 4)]
}

fn report(id: u32, name: &str, failures: &[String], detail: &str) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {id} {name}: {verdict} ({detail})");
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn fsmt_suite(model: &SutModel, b: LengthBounds, seed: u64) -> fsmt_core::TestSuite {
    generate_fsmt(model, &FsmtConfig::new(b, seed)).unwrap()
}

fn fsmt_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fsmt"))
}

/// The benchmark corpus exactly as `fsmt gen-models` writes it.
fn corpus(dir: &Path) -> Vec<(String, SutModel)> {
    let status = fsmt_bin()
        .args(["gen-models", "--count", &CORPUS_SIZE.to_string(), "--seed", &CORPUS_SEED.to_string()])
        .arg("--out-dir")
        .arg(dir)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    fsmt::cli::load_corpus(dir).unwrap()
}

fn corpus_benchmark() -> (BenchmarkReport, Duration) {
    let dir = tempfile::tempdir().unwrap();
    let models = corpus(dir.path());
    let config = BenchmarkConfig {
        fsmt_seed: FSMT_SEED,
        walk_cap: DEFAULT_WALK_CAP,
        cycle_cap: DEFAULT_CYCLE_CAP,
    };
    let clock = Instant::now();
    let report = bench::run_benchmark(&models, &windows(), &config).unwrap();
    (report, clock.elapsed())
}

#[test]
fn criterion_1_suite_validity() {
    let clock = Instant::now();
    let mut failures = Vec::new();
    let mut paths = 0;
    for seed in 1..=100u64 {
        let model = generate_model(&profile_params(seed)).unwrap();
        for b in windows() {
            let suite = fsmt_suite(&model, b, seed);
            for p in &suite.paths {
                paths += 1;
                let (from, to) = p.endpoints(&model).unwrap();
                let ok = b.contains(p.len())
                    && path_is_chained(&model, p).unwrap()
                    && model.test_starts.contains(from)
                    && model.test_ends.contains(to);
                if !ok {
                    failures.push(format!("seed {seed} {b}: {:?}", p.edge_ids));
                }
            }
        }
    }
    let elapsed = clock.elapsed();
    if elapsed >= Duration::from_secs(30) {
        failures.push(format!("took {elapsed:?}"));
    }
    report(1, "suite validity", &failures, &format!("{paths} paths, 300 suites, {elapsed:.2?}"));
}

#[test]
fn criterion_2_coverage_completeness() {
    let b = bounds(1, 4);
    let mut failures = Vec::new();
    for (i, model) in common::seeded_small_models(50, 8, 14, 0xC0FE).iter().enumerate() {
        let suite = fsmt_suite(model, b, i as u64);
        let uncovered: BTreeSet<String> = suite.uncovered_edges.iter().map(|u| u.edge_id.clone()).collect();
        let all: BTreeSet<String> = model.edges.iter().map(|e| e.id.clone()).collect();
        let infeasible: BTreeSet<String> = all.difference(&common::feasible_edges(model, b)).cloned().collect();
        if uncovered != infeasible {
            failures.push(format!("model {i}: reported {uncovered:?}, oracle {infeasible:?}"));
        }
    }
    report(2, "coverage completeness", &failures, "50 models, bounds [1,4]");
}

fn random_subset(rng: &mut SplitMix64, model: &SutModel) -> BTreeSet<VertexId> {
    let n = model.vertices.len();
    (0..rng.range_inclusive(1, n.min(3))).map(|_| model.vertices[rng.below(n)].clone()).collect()
}

#[test]
fn criterion_3_pathfinder_optimality() {
    let mut rng = SplitMix64::new(0xBEEF);
    let mut failures = Vec::new();
    let models = common::seeded_small_models(100, 6, 10, 0xFACE);
    for (i, model) in models.iter().enumerate() {
        let hi = rng.range_inclusive(1, 5);
        let b = bounds(rng.range_inclusive(1, hi), hi);
        let query = WalkQuery {
            sources: random_subset(&mut rng, model),
            targets: random_subset(&mut rng, model),
            bounds: b,
        };
        let got = shortest_bounded_walk(model, &query).unwrap().map(|p| p.len());
        let want = common::min_walk_len(model, &query.sources, &query.targets, b);
        if got != want {
            failures.push(format!("pair {i}: walk length {got:?}, oracle {want:?}"));
        }
        let via = rng.below(model.edges.len());
        let got = shortest_bounded_walk_through_edge(model, &query.sources, &model.edges[via].id, &query.targets, b)
            .unwrap()
            .map(|p| p.len());
        let want = common::min_walk_len_through(model, &query.sources, via, &query.targets, b);
        if got != want {
            failures.push(format!("pair {i}: through-edge length {got:?}, oracle {want:?}"));
        }
    }
    report(3, "pathfinder optimality", &failures, "100 queries, plain and through-edge");
}

#[test]
fn criterion_4_bfa_oracle() {
    let mut rng = SplitMix64::new(0xD1CE);
    let mut failures = Vec::new();
    for (i, model) in common::seeded_small_models(50, 6, 10, 0xB0A7).iter().enumerate() {
        let hi = rng.range_inclusive(1, 4);
        let b = bounds(rng.range_inclusive(1, hi), hi);
        let suite = generate_bfa(model, &BfaConfig::new(b)).unwrap();
        let got: BTreeSet<Vec<String>> = suite.paths.iter().map(|p| p.edge_ids.clone()).collect();
        if got.len() != suite.paths.len() || got != common::bfa_oracle(model, b) {
            failures.push(format!("model {i} {b}: output differs from enumeration"));
        }
    }
    report(4, "BFA oracle equivalence", &failures, "50 models, max <= 4");
}

#[test]
fn criterion_5_corpus_direction() {
    let (report_data, elapsed) = corpus_benchmark();
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for b in windows() {
        let row = bench::aggregate(&report_data.records, &[b])
            .into_iter()
            .find(|r| r.label == "BFA/FSMT")
            .unwrap();
        let length_ratio = row.total_length.unwrap_or(0.0);
        let path_ratio = row.path_count.unwrap_or(0.0);
        if length_ratio < 1.5 {
            failures.push(format!("{b}: total length ratio {length_ratio:.3} < 1.5"));
        }
        if path_ratio < 1.0 {
            failures.push(format!("{b}: mean BFA path count below FSMT ({path_ratio:.3})"));
        }

        let unique = |strategy: Strategy| -> BTreeMap<&str, Ratio> {
            report_data
                .records
                .iter()
                .filter(|r| r.strategy == strategy && r.bounds == b && r.status == RecordStatus::Ok)
                .filter_map(|r| Some((r.model_id.as_str(), r.metrics.as_ref()?.unique_ratio?)))
                .collect()
        };
        let (fsmt, bfa) = (unique(Strategy::Fsmt), unique(Strategy::Bfa));
        let both: Vec<&str> = fsmt.keys().filter(|m| bfa.contains_key(*m)).copied().collect();
        let wins = both.iter().filter(|m| fsmt[*m] > bfa[*m]).count();
        let ties = both.iter().filter(|m| fsmt[*m] == bfa[*m]).count();
        if both.is_empty() || wins * 10 < both.len() * 9 {
            failures.push(format!(
                "{b}: FSMT unique ratio higher on {wins}/{} models, need 90%",
                both.len()
            ));
        }
        detail.push(format!(
            "{b} L {length_ratio:.2} P {path_ratio:.2} U {wins}/{} ({ties} ties, {} losses)",
            both.len(),
            both.len() - wins - ties
        ));
    }
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    detail.push(format!("{elapsed:.2?}"));
    report(5, "corpus direction", &failures, &detail.join("; "));
}

#[test]
fn criterion_6_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let model_path = dir.path().join("model.json");
    let model = generate_model(&profile_params(6)).unwrap();
    std::fs::write(&model_path, serialize_model(&model)).unwrap();

    let mut failures = Vec::new();
    let runs = [
        ["fsmt", "1", "4", "csv"],
        ["fsmt", "3", "4", "json"],
        ["bfa", "1", "3", "xml"],
    ];
    for [strategy, min, max, format] in runs {
        let outputs: Vec<Vec<u8>> = (0..2)
            .map(|k| {
                let out = dir.path().join(format!("{strategy}-{min}-{max}-{k}.{format}"));
                let mut cmd = fsmt_bin();
                cmd.arg("generate")
                    .arg(&model_path)
                    .args(["--strategy", strategy, "--min", min, "--max", max, "--format", format])
                    .arg("--out")
                    .arg(&out);
                if strategy == "fsmt" {
                    cmd.args(["--seed", "99"]);
                }
                let status = cmd.output().unwrap().status;
                assert!(status.success(), "generate {strategy} exited with {status}");
                std::fs::read(&out).unwrap()
            })
            .collect();
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            failures.push(format!("generate {strategy} [{min},{max}] {format} differs between runs"));
        }
    }

    let corpus_a = tempfile::tempdir().unwrap();
    let corpus_b = tempfile::tempdir().unwrap();
    corpus(corpus_a.path());
    corpus(corpus_b.path());
    let files = |d: &Path| -> BTreeMap<String, Vec<u8>> {
        std::fs::read_dir(d)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
            })
            .collect()
    };
    let (a, b) = (files(corpus_a.path()), files(corpus_b.path()));
    if a != b || a.len() != CORPUS_SIZE {
        failures.push(format!("gen-models corpora differ ({} vs {} files)", a.len(), b.len()));
    }
    report(6, "determinism", &failures, "3 generate runs, 40-model corpus");
}

#[test]
fn criterion_7_round_trip() {
    let mut failures = Vec::new();
    for seed in 1..=100u64 {
        let model = generate_model(&profile_params(seed)).unwrap();
        match parse_model(&serialize_model(&model)) {
            Ok(back) if back == model => {}
            Ok(_) => failures.push(format!("seed {seed}: model changed in round trip")),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
        for suite in [
            fsmt_suite(&model, bounds(1, 4), seed),
            generate_bfa(&model, &BfaConfig::new(bounds(1, 2))).unwrap(),
        ] {
            let csv = export_suite(&model, &suite, SuiteFormat::Csv).unwrap();
            if parse_suite_csv(&csv).unwrap() != suite.paths {
                failures.push(format!("seed {seed}: CSV suite round trip"));
            }
            let json = export_suite(&model, &suite, SuiteFormat::Json).unwrap();
            if parse_suite_json(&json).unwrap() != suite {
                failures.push(format!("seed {seed}: JSON suite round trip"));
            }
        }
    }
    report(7, "round trip", &failures, "100 models, 200 suites");
}

fn parse_cell(cell: &str) -> Option<f64> {
    (!cell.is_empty()).then(|| cell.parse().unwrap())
}

#[test]
fn criterion_8_metric_consistency() {
    let (report_data, _) = corpus_benchmark();
    let mut failures = Vec::new();
    for r in &report_data.records {
        let Some(m) = &r.metrics else { continue };
        let product = m.unique_ratio.map(|u| u * Ratio::from_integer(m.total_length));
        let expected = (m.total_length > 0).then(|| Ratio::from_integer(m.distinct_edges));
        if product != expected {
            failures.push(format!("{} {:?} {}: unique * total {product:?}", r.model_id, r.strategy, r.bounds));
        }
    }

    // recompute the aggregate table from the written CSV alone
    let records_csv = bench::records_csv(&report_data.records).unwrap();
    let mut reader = csv::Reader::from_reader(records_csv.as_bytes());
    let mut sums: BTreeMap<(String, usize, usize), [(usize, f64); 5]> = BTreeMap::new();
    for row in reader.records() {
        let row = row.unwrap();
        if &row[11] != "OK" {
            continue;
        }
        let key = (row[1].to_owned(), row[2].parse().unwrap(), row[3].parse().unwrap());
        let entry = sums.entry(key).or_insert([(0, 0.0); 5]);
        for (k, cell) in entry.iter_mut().enumerate() {
            // an empty suite has no unique ratio and stays out of that mean
            if let Some(v) = parse_cell(&row[5 + k]) {
                cell.0 += 1;
                cell.1 += v;
            }
        }
    }
    let summary_csv = bench::summary_csv(&report_data.aggregates).unwrap();
    let mut reader = csv::Reader::from_reader(summary_csv.as_bytes());
    let mut checked = 0;
    for row in reader.records() {
        let row = row.unwrap();
        let label = &row[0];
        if label == "CAP_EXCEEDED_TOTAL" {
            continue;
        }
        let (min, max): (usize, usize) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        let mean = |strategy: &str, k: usize| {
            let (n, sum) = sums[&(strategy.to_owned(), min, max)][k];
            sum / n as f64
        };
        for k in 0..5 {
            let want = match label {
                "BFA/FSMT" => mean("BFA", k) / mean("FSMT", k),
                s => mean(s, k),
            };
            let got = parse_cell(&row[5 + k]).unwrap();
            checked += 1;
            if got != want {
                failures.push(format!("{label} [{min},{max}] column {k}: emitted {got}, recomputed {want}"));
            }
        }
    }
    report(
        8,
        "metric self-consistency",
        &failures,
        &format!("{} records, {checked} aggregate cells", report_data.records.len()),
    );
}
