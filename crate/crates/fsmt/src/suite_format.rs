//! Suite exports.
//!
//! CSV has one row per path:
//!
//! ```text
//! path_index,edge_sequence,start_vertex,end_vertex,length
//! 1,e1;e2,A,C,2
//! ```
//!
//! `path_index` counts from 1 and edge ids are joined with `;`. JSON carries
//! the same rows plus generation metadata and the uncovered-edge report; XML
//! mirrors the JSON as `suite/path/edge` and is write-only.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use fsmt_core::{LengthBounds, Strategy, SutModel, TestPath, TestSuite, UncoveredEdge, UncoveredReason};

use crate::FormatError;

pub const CSV_HEADER: [&str; 5] = ["path_index", "edge_sequence", "start_vertex", "end_vertex", "length"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteFormat {
    Csv,
    Json,
    Xml,
}

impl FromStr for SuiteFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(SuiteFormat::Csv),
            "json" => Ok(SuiteFormat::Json),
            "xml" => Ok(SuiteFormat::Xml),
            other => Err(format!("unknown suite format {other:?} (expected csv, json or xml)")),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteDoc {
    strategy: String,
    min: usize,
    max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    paths: Vec<PathDoc>,
    uncovered_edges: Vec<UncoveredDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathDoc {
    index: usize,
    start_vertex: String,
    end_vertex: String,
    length: usize,
    edges: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UncoveredDoc {
    edge: String,
    reason: String,
}

struct Row<'a> {
    index: usize,
    path: &'a TestPath,
    start: &'a str,
    end: &'a str,
}

fn rows<'a>(model: &'a SutModel, suite: &'a TestSuite) -> Result<Vec<Row<'a>>, FormatError> {
    suite
        .paths
        .iter()
        .enumerate()
        .map(|(i, path)| {
            let (start, end) = path.endpoints(model)?;
            Ok(Row {
                index: i + 1,
                path,
                start: start.as_str(),
                end: end.as_str(),
            })
        })
        .collect()
}

pub fn export_suite(model: &SutModel, suite: &TestSuite, format: SuiteFormat) -> Result<String, FormatError> {
    let rows = rows(model, suite)?;
    match format {
        SuiteFormat::Csv => to_csv(&rows),
        SuiteFormat::Json => Ok(to_json(suite, &rows)),
        SuiteFormat::Xml => Ok(to_xml(suite, &rows)),
    }
}

fn to_csv(rows: &[Row<'_>]) -> Result<String, FormatError> {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(CSV_HEADER)?;
    for r in rows {
        out.write_record([
            r.index.to_string(),
            r.path.edge_ids.join(";"),
            r.start.to_owned(),
            r.end.to_owned(),
            r.path.len().to_string(),
        ])?;
    }
    let bytes = out.into_inner().map_err(|e| FormatError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8"))
}

fn to_json(suite: &TestSuite, rows: &[Row<'_>]) -> String {
    let doc = SuiteDoc {
        strategy: suite.strategy.as_str().to_owned(),
        min: suite.bounds.min(),
        max: suite.bounds.max(),
        seed: suite.seed,
        paths: rows
            .iter()
            .map(|r| PathDoc {
                index: r.index,
                start_vertex: r.start.to_owned(),
                end_vertex: r.end.to_owned(),
                length: r.path.len(),
                edges: r.path.edge_ids.clone(),
            })
            .collect(),
        uncovered_edges: suite
            .uncovered_edges
            .iter()
            .map(|u| UncoveredDoc {
                edge: u.edge_id.clone(),
                reason: u.reason.as_str().to_owned(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("suite document serializes");
    text.push('\n');
    text
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn to_xml(suite: &TestSuite, rows: &[Row<'_>]) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = write!(
        out,
        "<suite strategy=\"{}\" min=\"{}\" max=\"{}\"",
        suite.strategy,
        suite.bounds.min(),
        suite.bounds.max()
    );
    if let Some(seed) = suite.seed {
        let _ = write!(out, " seed=\"{seed}\"");
    }
    out.push_str(">\n");
    for r in rows {
        let _ = writeln!(
            out,
            "  <path index=\"{}\" start_vertex=\"{}\" end_vertex=\"{}\" length=\"{}\">",
            r.index,
            escape(r.start),
            escape(r.end),
            r.path.len()
        );
        for id in &r.path.edge_ids {
            let _ = writeln!(out, "    <edge id=\"{}\"/>", escape(id));
        }
        out.push_str("  </path>\n");
    }
    for u in &suite.uncovered_edges {
        let _ = writeln!(
            out,
            "  <uncovered edge=\"{}\" reason=\"{}\"/>",
            escape(&u.edge_id),
            u.reason.as_str()
        );
    }
    out.push_str("</suite>\n");
    out
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        column: 0,
        message: message.into(),
    }
}

/// Reads the path list back from a CSV export.
pub fn parse_suite_csv(text: &str) -> Result<Vec<TestPath>, FormatError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(parse_error(1, format!("unexpected header {:?}", header.as_slice())));
    }
    let mut paths = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let index: usize = record[0]
            .parse()
            .map_err(|_| parse_error(line, "path_index is not an integer"))?;
        if index != i + 1 {
            return Err(parse_error(line, format!("path_index {index}, expected {}", i + 1)));
        }
        let path = TestPath::new(record[1].split(';'));
        let length: usize = record[4]
            .parse()
            .map_err(|_| parse_error(line, "length is not an integer"))?;
        if length != path.len() {
            return Err(parse_error(line, "length does not match edge_sequence"));
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Reads a JSON export back into a suite.
pub fn parse_suite_json(text: &str) -> Result<TestSuite, FormatError> {
    let doc: SuiteDoc = serde_json::from_str(text)?;
    let strategy = match doc.strategy.as_str() {
        "FSMT" => Strategy::Fsmt,
        "BFA" => Strategy::Bfa,
        other => return Err(parse_error(0, format!("unknown strategy {other:?}"))),
    };
    let paths = doc
        .paths
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            if p.index != i + 1 || p.length != p.edges.len() {
                return Err(parse_error(0, format!("path record {} is inconsistent", i + 1)));
            }
            Ok(TestPath::new(p.edges))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let uncovered_edges = doc
        .uncovered_edges
        .into_iter()
        .map(|u| match u.reason.as_str() {
            "NO_FEASIBLE_WALK" => Ok(UncoveredEdge {
                edge_id: u.edge,
                reason: UncoveredReason::NoFeasibleWalk,
            }),
            other => Err(parse_error(0, format!("unknown reason {other:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TestSuite {
        paths,
        strategy,
        bounds: LengthBounds::new(doc.min, doc.max)?,
        seed: doc.seed,
        uncovered_edges,
    })
}
