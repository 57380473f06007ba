//! Runs both strategies over a model corpus and a list of length windows.
//!
//! Per-record CSV columns:
//!
//! ```text
//! model_id,strategy,min,max,seed,total_length,path_count,avg_length,unique_ratio,edge_coverage,wall_time_ms,status
//! ```
//!
//! BFA runs that hit the walk cap keep their row with status `CAP_EXCEEDED`
//! and empty metric cells; they are left out of the averages.

use std::time::Instant;

use fsmt_core::{
    generate_bfa, generate_fsmt, model_stats, suite_metrics, BfaConfig, Error, FsmtConfig, LengthBounds,
    ModelStats, Ratio, Strategy, SutModel, SuiteMetrics,
};

use crate::FormatError;

pub const RECORD_HEADER: [&str; 12] = [
    "model_id",
    "strategy",
    "min",
    "max",
    "seed",
    "total_length",
    "path_count",
    "avg_length",
    "unique_ratio",
    "edge_coverage",
    "wall_time_ms",
    "status",
];

pub const SUMMARY_HEADER: [&str; 10] = [
    "strategy",
    "min",
    "max",
    "ok_records",
    "cap_exceeded",
    "total_length",
    "path_count",
    "avg_length",
    "unique_ratio",
    "edge_coverage",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordStatus {
    Ok,
    CapExceeded,
}

impl RecordStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordStatus::Ok => "OK",
            RecordStatus::CapExceeded => "CAP_EXCEEDED",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkRecord {
    pub model_id: String,
    pub strategy: Strategy,
    pub bounds: LengthBounds,
    pub seed: Option<u64>,
    /// `None` when the run hit the walk cap.
    pub metrics: Option<SuiteMetrics>,
    pub stats: ModelStats,
    pub wall_time_ms: f64,
    pub status: RecordStatus,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchmarkConfig {
    pub fsmt_seed: u64,
    pub walk_cap: usize,
    pub cycle_cap: u64,
}

/// Means over the OK records of one (strategy, bounds) cell, or the BFA/FSMT
/// quotient of two such cells.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    /// `FSMT`, `BFA`, or `BFA/FSMT` for the ratio rows.
    pub label: String,
    pub bounds: LengthBounds,
    pub ok_records: usize,
    pub cap_exceeded: usize,
    pub total_length: Option<f64>,
    pub path_count: Option<f64>,
    pub avg_length: Option<f64>,
    pub unique_ratio: Option<f64>,
    pub edge_coverage: Option<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct BenchmarkReport {
    pub records: Vec<BenchmarkRecord>,
    pub aggregates: Vec<AggregateRow>,
}

pub fn ratio_f64(r: Ratio) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The five metric values exactly as they are written to CSV.
pub fn metric_values(m: &SuiteMetrics) -> [Option<f64>; 5] {
    [
        Some(m.total_length as f64),
        Some(m.path_count as f64),
        Some(ratio_f64(m.avg_length)),
        m.unique_ratio.map(ratio_f64),
        Some(ratio_f64(m.edge_coverage)),
    ]
}

fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

pub fn run_benchmark(
    models: &[(String, SutModel)],
    bounds_list: &[LengthBounds],
    config: &BenchmarkConfig,
) -> Result<BenchmarkReport, Error> {
    let mut records = Vec::with_capacity(models.len() * bounds_list.len() * 2);
    for (id, model) in models {
        let stats = model_stats(model, config.cycle_cap)?;
        for &bounds in bounds_list {
            let clock = Instant::now();
            let suite = generate_fsmt(model, &FsmtConfig::new(bounds, config.fsmt_seed))?;
            records.push(BenchmarkRecord {
                model_id: id.clone(),
                strategy: Strategy::Fsmt,
                bounds,
                seed: Some(config.fsmt_seed),
                metrics: Some(suite_metrics(model, &suite)?),
                stats: stats.clone(),
                wall_time_ms: elapsed_ms(clock),
                status: RecordStatus::Ok,
            });

            let clock = Instant::now();
            let bfa = BfaConfig {
                bounds,
                walk_cap: config.walk_cap,
            };
            let (metrics, status) = match generate_bfa(model, &bfa) {
                Ok(suite) => (Some(suite_metrics(model, &suite)?), RecordStatus::Ok),
                Err(Error::WalkCapExceeded { .. }) => (None, RecordStatus::CapExceeded),
                Err(other) => return Err(other),
            };
            records.push(BenchmarkRecord {
                model_id: id.clone(),
                strategy: Strategy::Bfa,
                bounds,
                seed: None,
                metrics,
                stats: stats.clone(),
                wall_time_ms: elapsed_ms(clock),
                status,
            });
        }
    }
    let aggregates = aggregate(&records, bounds_list);
    Ok(BenchmarkReport { records, aggregates })
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let (sum, n) = values.flatten().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Per bounds: an FSMT row, a BFA row and their quotient, in `bounds_list` order.
pub fn aggregate(records: &[BenchmarkRecord], bounds_list: &[LengthBounds]) -> Vec<AggregateRow> {
    let mut rows = Vec::new();
    if records.is_empty() {
        return rows;
    }
    for &bounds in bounds_list {
        let cell = |strategy: Strategy| {
            let selected: Vec<&BenchmarkRecord> = records
                .iter()
                .filter(|r| r.strategy == strategy && r.bounds == bounds)
                .collect();
            let values: Vec<[Option<f64>; 5]> =
                selected.iter().filter_map(|r| r.metrics.as_ref()).map(metric_values).collect();
            let column = |k: usize| mean(values.iter().map(|v| v[k]));
            AggregateRow {
                label: strategy.as_str().to_owned(),
                bounds,
                ok_records: values.len(),
                cap_exceeded: selected.iter().filter(|r| r.status == RecordStatus::CapExceeded).count(),
                total_length: column(0),
                path_count: column(1),
                avg_length: column(2),
                unique_ratio: column(3),
                edge_coverage: column(4),
            }
        };
        let fsmt = cell(Strategy::Fsmt);
        let bfa = cell(Strategy::Bfa);
        let quotient = |b: Option<f64>, f: Option<f64>| match (b, f) {
            (Some(b), Some(f)) if f != 0.0 => Some(b / f),
            _ => None,
        };
        let ratio = AggregateRow {
            label: "BFA/FSMT".to_owned(),
            bounds,
            ok_records: bfa.ok_records.min(fsmt.ok_records),
            cap_exceeded: bfa.cap_exceeded,
            total_length: quotient(bfa.total_length, fsmt.total_length),
            path_count: quotient(bfa.path_count, fsmt.path_count),
            avg_length: quotient(bfa.avg_length, fsmt.avg_length),
            unique_ratio: quotient(bfa.unique_ratio, fsmt.unique_ratio),
            edge_coverage: quotient(bfa.edge_coverage, fsmt.edge_coverage),
        };
        rows.extend([fsmt, bfa, ratio]);
    }
    rows
}

fn cell(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

pub fn records_csv(records: &[BenchmarkRecord]) -> Result<String, FormatError> {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(RECORD_HEADER)?;
    for r in records {
        let values = r.metrics.as_ref().map(metric_values).unwrap_or([None; 5]);
        let mut row = vec![
            r.model_id.clone(),
            r.strategy.as_str().to_owned(),
            r.bounds.min().to_string(),
            r.bounds.max().to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
        ];
        row.extend(values.iter().map(|v| cell(*v)));
        row.push(format!("{:.3}", r.wall_time_ms));
        row.push(r.status.as_str().to_owned());
        out.write_record(&row)?;
    }
    finish(out)
}

/// Aggregate table; the last row counts every capped run.
pub fn summary_csv(rows: &[AggregateRow]) -> Result<String, FormatError> {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(SUMMARY_HEADER)?;
    for r in rows {
        out.write_record([
            r.label.clone(),
            r.bounds.min().to_string(),
            r.bounds.max().to_string(),
            r.ok_records.to_string(),
            r.cap_exceeded.to_string(),
            cell(r.total_length),
            cell(r.path_count),
            cell(r.avg_length),
            cell(r.unique_ratio),
            cell(r.edge_coverage),
        ])?;
    }
    let capped: usize = rows.iter().filter(|r| r.label == "BFA").map(|r| r.cap_exceeded).sum();
    out.write_record(["CAP_EXCEEDED_TOTAL", "", "", "", &capped.to_string(), "", "", "", "", ""])?;
    finish(out)
}

fn finish(out: csv::Writer<Vec<u8>>) -> Result<String, FormatError> {
    let bytes = out.into_inner().map_err(|e| FormatError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8"))
}

/// Human-readable rendition of the aggregate table.
pub fn summary_text(rows: &[AggregateRow]) -> String {
    let fmt = |v: Option<f64>| v.map(|v| format!("{v:.3}")).unwrap_or_else(|| "-".into());
    let mut out = format!(
        "{:<9} {:>7} {:>4} {:>6} {:>10} {:>8} {:>10} {:>8} {:>8}\n",
        "strategy", "bounds", "ok", "capped", "length", "|P|", "avg length", "unique", "coverage"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<9} {:>7} {:>4} {:>6} {:>10} {:>8} {:>10} {:>8} {:>8}\n",
            r.label,
            r.bounds.to_string(),
            r.ok_records,
            r.cap_exceeded,
            fmt(r.total_length),
            fmt(r.path_count),
            fmt(r.avg_length),
            fmt(r.unique_ratio),
            fmt(r.edge_coverage)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fsmt_core::{Edge, VertexId};

    fn m1() -> SutModel {
        SutModel {
            vertices: ["A", "B", "C"].map(VertexId::from).to_vec(),
            edges: vec![Edge::new("e1", "A", "B"), Edge::new("e2", "B", "C"), Edge::new("e3", "C", "A")],
            start_vertex: "A".into(),
            machine_ends: ["C".into()].into(),
            test_starts: ["A".into()].into(),
            test_ends: ["C".into()].into(),
        }
    }

    fn config() -> BenchmarkConfig {
        BenchmarkConfig {
            fsmt_seed: 1,
            walk_cap: 1_000_000,
            cycle_cap: 10_000,
        }
    }

    #[test]
    fn record_count() {
        let models = vec![("a".to_owned(), m1()), ("b".to_owned(), m1())];
        let report = run_benchmark(&models, &[LengthBounds::new(1, 2).unwrap()], &config()).unwrap();
        assert_eq!(report.records.len(), 4);
        assert_eq!(report.aggregates.len(), 3);
    }

    #[test]
    fn triangle_ratio_is_one() {
        let models = vec![("m1".to_owned(), m1())];
        let b = LengthBounds::new(1, 5).unwrap();
        let report = run_benchmark(&models, &[b], &config()).unwrap();
        let totals: Vec<u64> = report.records.iter().map(|r| r.metrics.as_ref().unwrap().total_length).collect();
        assert_eq!(totals, vec![7, 7]);
        let ratio = &report.aggregates[2];
        assert_eq!(ratio.label, "BFA/FSMT");
        assert_eq!(ratio.total_length, Some(1.0));
    }

    #[test]
    fn empty_corpus() {
        let report = run_benchmark(&[], &[LengthBounds::new(1, 2).unwrap()], &config()).unwrap();
        assert!(report.records.is_empty());
        assert!(report.aggregates.is_empty());
    }

    #[test]
    fn capped_runs_are_recorded() {
        let models = vec![("m1".to_owned(), m1())];
        let cfg = BenchmarkConfig { walk_cap: 1, ..config() };
        let report = run_benchmark(&models, &[LengthBounds::new(1, 5).unwrap()], &cfg).unwrap();
        assert_eq!(report.records[1].status, RecordStatus::CapExceeded);
        assert!(report.records[1].metrics.is_none());
        assert_eq!(report.aggregates[1].cap_exceeded, 1);
        assert_eq!(report.aggregates[1].total_length, None);
        let csv = records_csv(&report.records).unwrap();
        let last = csv.lines().last().unwrap();
        assert!(last.starts_with("m1,BFA,1,5,,,,,,,"), "{last}");
        assert!(last.ends_with(",CAP_EXCEEDED"));
        let summary = summary_csv(&report.aggregates).unwrap();
        assert!(summary.ends_with("CAP_EXCEEDED_TOTAL,,,,1,,,,,\n"), "{summary}");
    }
}
