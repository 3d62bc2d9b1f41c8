mod table;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use isdlab::bounds::{verify_all, BoundError, TheoremId};
use isdlab::ensemble::{
    scaling_collapse, AveragedInequality, EnsembleConfig, EnsembleError, InequalityRow, Sweep,
    SweepRow,
};
use isdlab::graph::Validation;
use isdlab::indices::{IndexError, IndexFamily, IndexSpec};
use isdlab::io::{parse_grid, read_edge_list, GridError, ParseError};
use serde::Deserialize;
use thiserror::Error;

use table::{Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "isdlab", version, about = "Inverse sum deg index toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate degree-based indices on an edge-list graph.
    Index {
        file: PathBuf,
        /// Comma-separated index specs, e.g. `isd:-1,ga,chi:-0.5`.
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Check every inequality on a graph over a grid of exponents.
    Verify {
        file: PathBuf,
        /// Exponent grid: `x1,x2,...` or `start:stop:step`.
        #[arg(long = "a", allow_hyphen_values = true)]
        a_grid: String,
        /// Restrict to these theorems (e.g. `t10,P1_EdgeBound`).
        #[arg(long)]
        theorem: Option<String>,
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Simulate G(n, p) ensembles over a (p, a) grid.
    Sweep(SweepArgs),
    /// Compare scaled sweep curves across graph orders.
    Collapse {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Debug, Args)]
struct InputOpts {
    /// Merge duplicate edges and drop self-loops instead of rejecting them.
    #[arg(long)]
    permissive: bool,
}

#[derive(Debug, Args)]
struct OutputOpts {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    /// Probability grid; `start:stop:logK` gives K log-spaced points.
    #[arg(long)]
    p: String,
    #[arg(long = "a", allow_hyphen_values = true)]
    a_grid: String,
    /// `auto` (10^7/n) or an explicit count.
    #[arg(long, default_value = "auto")]
    replicas: String,
    /// Upper limit on `auto` replicas.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    seed: u64,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Index family to average.
    #[arg(long, default_value = "isd")]
    spec: String,
    /// Averaged inequalities to check, e.g. `Eq4av,Eq6av`.
    #[arg(long)]
    check: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("bad grid: {0}")]
    Grid(#[from] GridError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Success,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("ISDLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("ISDLAB_THREADS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Index {
            file,
            spec,
            input,
            output,
        } => run_index(&file, &spec, &input, &output),
        Command::Verify {
            file,
            a_grid,
            theorem,
            input,
            output,
        } => run_verify(&file, &a_grid, theorem.as_deref(), &input, &output),
        Command::Sweep(args) => run_sweep(&args),
        Command::Collapse { files, output } => run_collapse(&files, &output),
    }
}

fn validation(input: &InputOpts) -> Validation {
    if input.permissive {
        Validation::Permissive
    } else {
        Validation::Strict
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn emit(table: &Table, output: &OutputOpts) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_file(path, table, output.format),
        None => {
            let stdout = io::stdout().lock();
            table
                .write(output.format, BufWriter::new(stdout))
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn write_file(path: &Path, table: &Table, format: Format) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    table.write(format, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

fn run_index(
    file: &Path,
    specs: &str,
    input: &InputOpts,
    output: &OutputOpts,
) -> Result<Outcome, CliError> {
    let specs = split_list(specs)
        .map(str::parse::<IndexSpec>)
        .collect::<Result<Vec<_>, _>>()?;
    if specs.is_empty() {
        return Err(CliError::Usage("--spec lists no indices".into()));
    }
    let g = read_edge_list(file, validation(input))?;
    let mut table = Table::new(&["spec", "value"]);
    for spec in &specs {
        let value = spec.evaluate(&g)?;
        table.push(vec![Cell::Text(spec.to_string()), Cell::Fixed(value)]);
    }
    emit(&table, output)?;
    Ok(Outcome::Success)
}

const VERIFY_HEADER: [&str; 15] = [
    "theorem",
    "a",
    "applicable",
    "lower",
    "value",
    "upper",
    "slack_lower",
    "slack_upper",
    "equality_lower",
    "equality_upper",
    "holds",
    "holds_strictly",
    "converse_asserted",
    "predicted_class",
    "actual_class",
];

fn run_verify(
    file: &Path,
    a_grid: &str,
    theorems: Option<&str>,
    input: &InputOpts,
    output: &OutputOpts,
) -> Result<Outcome, CliError> {
    let grid = parse_grid(a_grid)?;
    let selected = theorems
        .map(|list| {
            split_list(list)
                .map(str::parse::<TheoremId>)
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let g = read_edge_list(file, validation(input))?;
    let reports: Vec<_> = verify_all(&g, &grid)?
        .into_iter()
        .filter(|r| selected.as_ref().is_none_or(|s| s.contains(&r.theorem)))
        .collect();
    let mut table = Table::new(&VERIFY_HEADER);
    let mut violated = false;
    for r in &reports {
        violated |= r.violated();
        table.push(vec![
            Cell::Text(r.theorem.to_string()),
            Cell::Sig(r.a),
            Cell::Bool(r.applicable),
            Cell::fixed_opt(r.lower.map(|s| s.bound)),
            Cell::fixed_opt(r.value),
            Cell::fixed_opt(r.upper.map(|s| s.bound)),
            Cell::fixed_opt(r.slack_lower),
            Cell::fixed_opt(r.slack_upper),
            Cell::Bool(r.equality_lower),
            Cell::Bool(r.equality_upper),
            Cell::Bool(r.holds),
            Cell::Bool(r.holds_strictly),
            Cell::Bool(r.converse_asserted),
            Cell::Text(r.predicted_class_label()),
            Cell::Text(r.actual_class.to_string()),
        ]);
    }
    emit(&table, output)?;
    if violated {
        eprintln!("inequality violation detected");
        Ok(Outcome::Violation)
    } else {
        Ok(Outcome::Success)
    }
}

fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut table = Table::new(&SweepRow::CSV_HEADER);
    for r in rows {
        table.push(vec![
            Cell::Int(r.n),
            Cell::Sig(r.p),
            Cell::Sig(r.a),
            Cell::Int(r.sample_count),
            Cell::Sig(r.mean_isd),
            Cell::Sig(r.stderr_isd),
            Cell::Sig(r.mean_edges),
            Cell::Sig(r.mean_deg),
            Cell::Sig(r.approx_isd),
            Cell::Sig(r.scaled_ratio),
            Cell::Sig(r.approx_ratio),
            Cell::Int(r.rejections),
        ]);
    }
    table
}

fn inequality_table(rows: &[InequalityRow]) -> Table {
    let mut table = Table::new(&InequalityRow::CSV_HEADER);
    for r in rows {
        table.push(vec![
            Cell::Sig(r.p),
            Cell::Sig(r.a),
            Cell::Sig(r.lhs),
            Cell::Sig(r.rhs),
            Cell::Sig(r.margin),
            Cell::Sig(r.stderr),
            Cell::Sig(r.mean_deg),
            Cell::Int(r.sample_count),
        ]);
    }
    table
}

fn run_sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    let p_grid = parse_grid(&args.p)?;
    let a_grid = parse_grid(&args.a_grid)?;
    let replicas = match args.replicas.trim() {
        "auto" => EnsembleConfig::budgeted_replicas(args.n, args.budget),
        count => count
            .parse()
            .map_err(|_| CliError::Usage(format!("--replicas must be `auto` or a count, got `{count}`")))?,
    };
    let family: IndexFamily = args.spec.parse()?;
    let checks = args
        .check
        .as_deref()
        .map(|list| {
            split_list(list)
                .map(|s| s.parse::<AveragedInequality>().map_err(CliError::Usage))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?
        .unwrap_or_default();
    if !checks.is_empty() && family != IndexFamily::Isd {
        return Err(CliError::Usage("--check requires --spec isd".into()));
    }
    for which in &checks {
        which.check_grid(&a_grid)?;
    }
    let cfg = EnsembleConfig::new(args.n, p_grid, a_grid, replicas, args.seed)?;

    let sweep = Sweep::run(&cfg, family)?;
    let rows = sweep.rows();
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.display().to_string(),
        source,
    })?;
    let ext = match args.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    write_file(&args.out.join(format!("sweep.{ext}")), &sweep_table(&rows), args.format)?;
    for &which in &checks {
        let table = inequality_table(&sweep.inequality(which)?);
        write_file(&args.out.join(format!("check_{which}.{ext}")), &table, args.format)?;
    }

    let untrusted = rows.iter().filter(|r| r.untrusted()).count();
    eprintln!(
        "{} rows, {} replicas per cell, {} untrusted",
        rows.len(),
        replicas,
        untrusted
    );
    Ok(Outcome::Success)
}

/// One line of a sweep CSV.
#[derive(Debug, Deserialize)]
struct SweepRecord {
    n: usize,
    p: f64,
    a: f64,
    replicas: usize,
    mean_isd: f64,
    stderr_isd: f64,
    mean_edges: f64,
    mean_deg: f64,
    approx_isd: f64,
    scaled_ratio: f64,
    approx_ratio: f64,
    rejections: usize,
}

impl From<SweepRecord> for SweepRow {
    fn from(r: SweepRecord) -> Self {
        SweepRow {
            n: r.n,
            p: r.p,
            a: r.a,
            sample_count: r.replicas,
            mean_isd: r.mean_isd,
            stderr_isd: r.stderr_isd,
            mean_edges: r.mean_edges,
            mean_deg: r.mean_deg,
            approx_isd: r.approx_isd,
            scaled_ratio: r.scaled_ratio,
            approx_ratio: r.approx_ratio,
            rejections: r.rejections,
        }
    }
}

fn read_sweep(path: &Path) -> Result<Vec<SweepRow>, CliError> {
    let csv_err = |source| CliError::Csv {
        path: path.display().to_string(),
        source,
    };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    reader
        .deserialize::<SweepRecord>()
        .map(|r| r.map(SweepRow::from).map_err(csv_err))
        .collect()
}

fn run_collapse(files: &[PathBuf], output: &OutputOpts) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    for file in files {
        rows.extend(read_sweep(file)?);
    }
    let report = scaling_collapse(&rows)?;
    let mut table = Table::new(&isdlab::ensemble::CollapseEntry::CSV_HEADER);
    for e in &report.entries {
        let sizes: Vec<String> = e.sizes.iter().map(usize::to_string).collect();
        table.push(vec![
            Cell::Sig(e.a),
            Cell::Text(sizes.join(";")),
            Cell::Sig(e.degree_range.0),
            Cell::Sig(e.degree_range.1),
            Cell::Int(e.grid_points),
            Cell::Sig(e.max_spread),
            Cell::Sig(e.max_approx_deviation),
        ]);
    }
    emit(&table, output)?;
    Ok(Outcome::Success)
}
