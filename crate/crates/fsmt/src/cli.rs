//! The `fsmt` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid model, 3 walk cap
//! exceeded, 4 I/O failure. Payloads go to standard output or `--out`;
//! diagnostics always go to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use fsmt_core::{
    generate_bfa, generate_fsmt, generate_model, model_stats, profile_params, suite_metrics, validate_model,
    BfaConfig, Error, FsmtConfig, LengthBounds, ModelStats, SplitMix64, SutModel, TestSuite, DEFAULT_CYCLE_CAP,
    DEFAULT_WALK_CAP,
};

use crate::bench::{self, BenchmarkConfig};
use crate::dot::render_dot;
use crate::model_file::{parse_model, serialize_model};
use crate::suite_format::{export_suite, parse_suite_csv, parse_suite_json, SuiteFormat};
use crate::FormatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Usage = 1,
    InvalidModel = 2,
    CapExceeded = 3,
    Io = 4,
}

#[derive(Debug, Parser)]
#[command(name = "fsmt", version, about = "Generate and compare state machine test suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Fsmt,
    Bfa,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Xml,
}

impl From<FormatArg> for SuiteFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => SuiteFormat::Csv,
            FormatArg::Json => SuiteFormat::Json,
            FormatArg::Xml => SuiteFormat::Xml,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a model file and list every violated constraint.
    Validate { model: PathBuf },
    /// Generate a test suite from a model.
    Generate {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "fsmt")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 1)]
        min: usize,
        #[arg(long, default_value_t = 4)]
        max: usize,
        /// Required for fsmt; ignored for bfa.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_WALK_CAP)]
        walk_cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Drop phase-one paths that cover no new edge.
        #[arg(long)]
        skip_redundant_phase1: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print descriptive statistics of a model.
    Stats {
        model: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        cycle_cap: u64,
    },
    /// Write a corpus of seeded random models.
    GenModels {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
        /// Fixed parameters; anything left out is sampled per model.
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long)]
        parallel: Option<usize>,
        #[arg(long)]
        starts: Option<usize>,
        #[arg(long)]
        ends: Option<usize>,
        #[arg(long)]
        overlap: Option<usize>,
    },
    /// Render a model as Graphviz DOT, optionally with one suite path in bold.
    Render {
        model: PathBuf,
        /// Suite export (JSON, or CSV by `.csv` extension).
        #[arg(long)]
        suite: Option<PathBuf>,
        /// Zero-based index of the path to highlight.
        #[arg(long, requires = "suite")]
        path_index: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run FSMT and BFA over every model in a directory.
    Bench {
        #[arg(long)]
        models_dir: PathBuf,
        /// Comma-separated `min:max` windows.
        #[arg(long, default_value = "1:2,3:4,1:4")]
        bounds: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WALK_CAP)]
        walk_cap: usize,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        cycle_cap: u64,
        /// Per-record CSV; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Aggregate CSV; a text table goes to standard error either way.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure {
    code: ExitCode,
    message: String,
}

impl Failure {
    fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(err: FormatError) -> Self {
        let code = match &err {
            FormatError::Io(_) => ExitCode::Io,
            FormatError::Core(e) => core_code(e),
            _ => ExitCode::InvalidModel,
        };
        Failure::new(code, err.to_string())
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::new(core_code(&err), err.to_string())
    }
}

fn core_code(err: &Error) -> ExitCode {
    match err {
        Error::InvalidModel(_) => ExitCode::InvalidModel,
        Error::WalkCapExceeded { .. } => ExitCode::CapExceeded,
        Error::UnknownEdgeId(_) | Error::UnknownVertex(_) => ExitCode::InvalidModel,
        Error::InvalidBounds { .. } | Error::InfeasibleParams(_) => ExitCode::Usage,
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::Usage as i32 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Validate { model } => cmd_validate(&model),
        Command::Generate {
            model,
            strategy,
            min,
            max,
            seed,
            walk_cap,
            format,
            skip_redundant_phase1,
            out,
        } => cmd_generate(GenerateArgs {
            model,
            strategy,
            min,
            max,
            seed,
            walk_cap,
            format: format.into(),
            skip_redundant_phase1,
            out,
        }),
        Command::Stats { model, cycle_cap } => cmd_stats(&model, cycle_cap),
        Command::GenModels {
            count,
            seed,
            out_dir,
            vertices,
            edges,
            parallel,
            starts,
            ends,
            overlap,
        } => cmd_gen_models(count, seed, &out_dir, [vertices, edges, parallel, starts, ends, overlap]),
        Command::Render {
            model,
            suite,
            path_index,
            out,
        } => cmd_render(&model, suite.as_deref(), path_index, out.as_deref()),
        Command::Bench {
            models_dir,
            bounds,
            seed,
            walk_cap,
            cycle_cap,
            out,
            summary,
        } => cmd_bench(&models_dir, &bounds, seed, walk_cap, cycle_cap, out.as_deref(), summary.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::Success as i32,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code as i32
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(ExitCode::Io, format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<SutModel, Failure> {
    let text = read(path)?;
    parse_model(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn write_output(out: Option<&Path>, payload: &str) -> CmdResult {
    match out {
        Some(path) => {
            fs::write(path, payload).map_err(|e| Failure::new(ExitCode::Io, format!("{}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(payload.as_bytes())
            .map_err(|e| Failure::new(ExitCode::Io, e.to_string())),
    }
}

fn cmd_validate(path: &Path) -> CmdResult {
    let text = read(path)?;
    let model = match parse_model(&text) {
        Ok(model) => model,
        Err(FormatError::Validation(report)) => {
            for v in &report {
                println!("{v}");
            }
            return Err(Failure::new(
                ExitCode::InvalidModel,
                format!("{}: {} violation(s)", path.display(), report.len()),
            ));
        }
        Err(other) => return Err(other.into()),
    };
    debug_assert!(validate_model(&model).is_empty());
    println!("OK");
    Ok(())
}

struct GenerateArgs {
    model: PathBuf,
    strategy: StrategyArg,
    min: usize,
    max: usize,
    seed: Option<u64>,
    walk_cap: usize,
    format: SuiteFormat,
    skip_redundant_phase1: bool,
    out: Option<PathBuf>,
}

fn fmt_ratio(r: fsmt_core::Ratio) -> String {
    format!("{:.4}", bench::ratio_f64(r))
}

fn report_suite(model: &SutModel, suite: &TestSuite) -> CmdResult {
    let m = suite_metrics(model, suite)?;
    eprintln!(
        "{} {}: paths={} total_length={} avg_length={} unique_ratio={} edge_coverage={}",
        suite.strategy,
        suite.bounds,
        m.path_count,
        m.total_length,
        fmt_ratio(m.avg_length),
        m.unique_ratio.map(fmt_ratio).unwrap_or_else(|| "n/a".into()),
        fmt_ratio(m.edge_coverage),
    );
    for u in &suite.uncovered_edges {
        eprintln!("uncovered: {} ({})", u.edge_id, u.reason.as_str());
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    let bounds = LengthBounds::new(args.min, args.max)
        .map_err(|e| Failure::new(ExitCode::Usage, e.to_string()))?;
    let model = load_model(&args.model)?;
    let suite = match args.strategy {
        StrategyArg::Fsmt => {
            let seed = args
                .seed
                .ok_or_else(|| Failure::new(ExitCode::Usage, "--seed is required with --strategy fsmt"))?;
            let mut config = FsmtConfig::new(bounds, seed);
            config.skip_redundant_phase1 = args.skip_redundant_phase1;
            generate_fsmt(&model, &config)?
        }
        StrategyArg::Bfa => {
            if args.seed.is_some() {
                eprintln!("warning: --seed is ignored with --strategy bfa");
            }
            generate_bfa(
                &model,
                &BfaConfig {
                    bounds,
                    walk_cap: args.walk_cap,
                },
            )?
        }
    };
    let payload = export_suite(&model, &suite, args.format)?;
    write_output(args.out.as_deref(), &payload)?;
    report_suite(&model, &suite)
}

pub fn stats_text(stats: &ModelStats) -> String {
    let truncated = if stats.cycles_truncated { " (truncated)" } else { "" };
    format!(
        "vertices: {}\nedges: {}\nsimple_cycles: {}{truncated}\navg_cycle_length: {}\n\
         parallel_edges: {}\navg_node_degree: {}\ntest_starts: {}\ntest_ends: {}\nstart_end_overlap: {}\n",
        stats.vertex_count,
        stats.edge_count,
        stats.simple_cycle_count,
        fmt_ratio(stats.avg_cycle_length),
        stats.parallel_edge_count,
        fmt_ratio(stats.avg_node_degree),
        stats.test_start_count,
        stats.test_end_count,
        stats.start_end_overlap_count,
    )
}

fn cmd_stats(path: &Path, cycle_cap: u64) -> CmdResult {
    if cycle_cap == 0 {
        return Err(Failure::new(ExitCode::Usage, "--cycle-cap must be positive"));
    }
    let model = load_model(path)?;
    let stats = model_stats(&model, cycle_cap)?;
    print!("{}", stats_text(&stats));
    Ok(())
}

fn cmd_gen_models(count: usize, seed: u64, out_dir: &Path, fixed: [Option<usize>; 6]) -> CmdResult {
    fs::create_dir_all(out_dir).map_err(|e| Failure::new(ExitCode::Io, format!("{}: {e}", out_dir.display())))?;
    let [vertices, edges, parallel, starts, ends, overlap] = fixed;
    let mut seeds = SplitMix64::new(seed);
    let width = count.saturating_sub(1).to_string().len().max(3);
    for i in 0..count {
        let mut params = profile_params(seeds.next_u64());
        if let Some(v) = vertices {
            params.vertex_count = v;
        }
        if let Some(e) = edges {
            params.edge_count = e;
        }
        if let Some(p) = parallel {
            params.parallel_edge_target = p;
        }
        if let Some(s) = starts {
            params.test_start_count = s;
        }
        if let Some(t) = ends {
            params.test_end_count = t;
        }
        if let Some(o) = overlap {
            params.overlap_count = o;
        }
        if vertices.is_some() || starts.is_some() || ends.is_some() {
            // keep sampled set sizes consistent with fixed ones
            let n = params.vertex_count;
            params.test_start_count = params.test_start_count.min(n);
            params.test_end_count = params.test_end_count.min(n);
            if overlap.is_none() {
                let lo = (params.test_start_count + params.test_end_count).saturating_sub(n);
                let hi = params.test_start_count.min(params.test_end_count);
                params.overlap_count = params.overlap_count.clamp(lo, hi.max(lo));
            }
        }
        if vertices.is_some() && edges.is_none() {
            params.edge_count = params.edge_count.max(params.vertex_count.saturating_sub(1));
        }
        let model = generate_model(&params)?;
        let path = out_dir.join(format!("model_{i:0width$}.json"));
        fs::write(&path, serialize_model(&model))
            .map_err(|e| Failure::new(ExitCode::Io, format!("{}: {e}", path.display())))?;
    }
    eprintln!("wrote {count} model(s) to {}", out_dir.display());
    Ok(())
}

fn cmd_render(model_path: &Path, suite: Option<&Path>, index: Option<usize>, out: Option<&Path>) -> CmdResult {
    let model = load_model(model_path)?;
    let highlight = match suite {
        None => None,
        Some(path) => {
            let text = read(path)?;
            let paths = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
                parse_suite_csv(&text)?
            } else {
                parse_suite_json(&text)?.paths
            };
            let i = index.unwrap_or(0);
            let chosen = paths.into_iter().nth(i).ok_or_else(|| {
                Failure::new(ExitCode::Usage, format!("suite {} has no path at index {i}", path.display()))
            })?;
            if let Some(bad) = chosen.edge_ids.iter().find(|id| model.edge(id).is_none()) {
                return Err(Failure::new(ExitCode::InvalidModel, format!("UNKNOWN_EDGE_ID: {bad}")));
            }
            Some(chosen)
        }
    };
    write_output(out, &render_dot(&model, highlight.as_ref()))
}

fn parse_bounds_list(text: &str) -> Result<Vec<LengthBounds>, Failure> {
    text.split(',')
        .map(|item| {
            let (lo, hi) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| Failure::new(ExitCode::Usage, format!("bounds {item:?} is not min:max")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::new(ExitCode::Usage, format!("bounds {item:?} is not min:max")))
            };
            LengthBounds::new(parse(lo)?, parse(hi)?).map_err(|e| Failure::new(ExitCode::Usage, e.to_string()))
        })
        .collect()
}

/// Models in `dir` with a `.json` extension, sorted by file name; ids are file stems.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, SutModel)>, FormatError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();
    files
        .into_iter()
        .map(|path| {
            let id = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let model = parse_model(&fs::read_to_string(&path)?)?;
            Ok((id, model))
        })
        .collect()
}

fn cmd_bench(
    dir: &Path,
    bounds: &str,
    seed: u64,
    walk_cap: usize,
    cycle_cap: u64,
    out: Option<&Path>,
    summary: Option<&Path>,
) -> CmdResult {
    let bounds_list = parse_bounds_list(bounds)?;
    let corpus = load_corpus(dir).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", dir.display(), f.message);
        f
    })?;
    let config = BenchmarkConfig {
        fsmt_seed: seed,
        walk_cap,
        cycle_cap: cycle_cap.max(1),
    };
    let report = bench::run_benchmark(&corpus, &bounds_list, &config)?;
    write_output(out, &bench::records_csv(&report.records)?)?;
    if let Some(path) = summary {
        fs::write(path, bench::summary_csv(&report.aggregates)?)
            .map_err(|e| Failure::new(ExitCode::Io, format!("{}: {e}", path.display())))?;
    }
    eprint!("{}", bench::summary_text(&report.aggregates));
    Ok(())
}
