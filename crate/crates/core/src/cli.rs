//! Command-line front end.
//!
//! Exit codes follow one contract everywhere: 0 for a positive verdict or
//! successful run, 1 for a negative verdict (not unlinked, not realizing, no
//! witness), 2 for usage or data errors.
//!
//! Tree inputs for `check`, `search`, `lando` and `unlinked` are sniffed by
//! content: a leading `{` means JSON, a first significant line equal to
//! `tree` means the tree file format, anything else is parsed as a circle
//! diagram.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::enumerate::{canonical_form, free_trees, path_tree};
use crate::formats::{
    diagram_to_tree, parse_bijection, parse_diagram, parse_json_tree, parse_tree_file,
    to_diagram_text, to_dot, to_json, to_tree_file, FormatError,
};
use crate::realize::{
    brute_force_find, count_realizing, decide_lando, find_realizing, RealizeError, SearchOptions,
    SearchReport, SideCheck, Strategy, Verdict,
};
use crate::tree::{EdgeSet, Tree, TreeError};
use crate::unlink::on_one_side;

#[derive(Parser)]
#[command(
    name = "lando-kit",
    version,
    about = "Decide realizability of circle-system bijections via dual trees",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse one tree and reprint it in another format.
    Parse(ParseArgs),
    /// Test whether two disjoint circle unions are unlinked.
    Unlinked(UnlinkedArgs),
    /// Check one explicit bijection for realizability.
    Check(CheckArgs),
    /// Search for a realizing bijection between two trees.
    Search(SearchArgs),
    /// Decide realizability of a pair of trees (pruned search).
    Lando(LandoArgs),
    /// Decide every same-size pair of trees up to a size; write a CSV.
    Census(CensusArgs),
    /// Decide every (tree, path) pair up to a size; write a CSV.
    Problem2(CensusArgs),
}

#[derive(Args)]
struct ParseArgs {
    /// Input in circle diagram notation.
    #[arg(long, value_name = "FILE")]
    diagram: Option<PathBuf>,
    /// Input in the line-oriented tree file format.
    #[arg(long, value_name = "FILE", conflicts_with = "diagram")]
    tree: Option<PathBuf>,
    /// Input in JSON.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["diagram", "tree"])]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Summary)]
    out: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Summary,
    Dot,
    Json,
    Tree,
    Diagram,
}

#[derive(Args)]
struct UnlinkedArgs {
    /// The tree both edge sets live in.
    #[arg(long, value_name = "FILE")]
    tree: PathBuf,
    /// Comma-separated edge labels of the first union (may be empty).
    #[arg(long, value_name = "LABELS", allow_hyphen_values = true)]
    p: String,
    /// Comma-separated edge labels of the second union (may be empty).
    #[arg(long, value_name = "LABELS", allow_hyphen_values = true)]
    q: String,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_name = "FILE")]
    g: PathBuf,
    #[arg(long, value_name = "FILE")]
    h: PathBuf,
    /// Bijection as comma-separated SOURCE=TARGET label pairs.
    #[arg(long, value_name = "TEXT")]
    bijection: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Brute,
    Pruned,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_name = "FILE")]
    g: PathBuf,
    #[arg(long, value_name = "FILE")]
    h: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyArg::Pruned)]
    strategy: StrategyArg,
    /// Count all realizing bijections instead of stopping at the first
    /// (exhaustive; requires --strategy brute).
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct LandoArgs {
    #[arg(long, value_name = "FILE")]
    g: PathBuf,
    #[arg(long, value_name = "FILE")]
    h: PathBuf,
}

#[derive(Args)]
struct CensusArgs {
    /// Largest edge count to cover (every size from 0 up is included).
    #[arg(long, value_name = "K")]
    max_edges: usize,
    /// Output CSV path.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Worker threads for independent rows; does not change output bytes.
    #[arg(long, value_name = "N", default_value_t = 1)]
    jobs: usize,
}

enum CliError {
    Io { path: PathBuf, source: std::io::Error },
    Format(FormatError),
    Tree(TreeError),
    Realize(RealizeError),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Format(e) => write!(f, "{e}"),
            CliError::Tree(e) => write!(f, "{e}"),
            CliError::Realize(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Format(e)
    }
}
impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        CliError::Tree(e)
    }
}
impl From<RealizeError> for CliError {
    fn from(e: RealizeError) -> Self {
        CliError::Realize(e)
    }
}

/// Runs the CLI against explicit arguments (without the program name) and
/// streams; returns the process exit code. The binary is a thin wrapper
/// around this, and tests call it in-process.
pub fn run<I>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator,
    I::Item: Into<OsString>,
{
    let argv = std::iter::once(OsString::from("lando-kit"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
        }
    };
    let result = match cli.command {
        Command::Parse(args) => cmd_parse(args, stdout),
        Command::Unlinked(args) => cmd_unlinked(args, stdout),
        Command::Check(args) => cmd_check(args, stdout),
        Command::Search(args) => cmd_search(args, stdout),
        Command::Lando(args) => cmd_lando(args, stdout),
        Command::Census(args) => cmd_census(args, stdout, stderr),
        Command::Problem2(args) => cmd_problem2(args, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a tree from any of the three text formats, deciding by content.
fn load_tree(path: &Path) -> Result<Tree, CliError> {
    let text = read_file(path)?;
    if text.trim_start().starts_with('{') {
        return Ok(parse_json_tree(&text)?);
    }
    let first_significant = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    if first_significant == Some("tree") {
        return Ok(parse_tree_file(&text)?);
    }
    Ok(diagram_to_tree(&parse_diagram(&text)?))
}

fn parse_edge_set(text: &str, t: &Tree) -> Result<EdgeSet, CliError> {
    let mut set = EdgeSet::empty(t.edge_count());
    if text.trim().is_empty() {
        return Ok(set);
    }
    for part in text.split(',') {
        let label = part.trim();
        if label.is_empty() {
            return Err(CliError::Usage(format!(
                "empty label in edge list {text:?}"
            )));
        }
        let id = t
            .edge_id(label)
            .ok_or_else(|| FormatError::UnknownLabel {
                label: label.to_string(),
            })?;
        set.insert(id);
    }
    Ok(set)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_parse(args: ParseArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let tree = if let Some(path) = &args.diagram {
        diagram_to_tree(&parse_diagram(&read_file(path)?)?)
    } else if let Some(path) = &args.tree {
        parse_tree_file(&read_file(path)?)?
    } else if let Some(path) = &args.json {
        parse_json_tree(&read_file(path)?)?
    } else {
        return Err(CliError::Usage(
            "one of --diagram, --tree, --json is required".to_string(),
        ));
    };
    match args.out {
        OutFormat::Summary => {
            let labels: Vec<&str> = tree.edges().iter().map(|e| e.label.as_str()).collect();
            let _ = writeln!(stdout, "vertices: {}", tree.vertex_count());
            let _ = writeln!(stdout, "edges: {}", tree.edge_count());
            let _ = writeln!(stdout, "labels: {}", labels.join(","));
            let _ = writeln!(stdout, "canonical: {}", canonical_form(&tree));
        }
        OutFormat::Dot => {
            let _ = write!(stdout, "{}", to_dot(&tree));
        }
        OutFormat::Json => {
            let _ = writeln!(stdout, "{}", to_json(&tree));
        }
        OutFormat::Tree => {
            let _ = write!(stdout, "{}", to_tree_file(&tree));
        }
        OutFormat::Diagram => {
            if tree.edge_count() == 0 {
                return Err(CliError::Usage(
                    "the one-vertex tree has no circle diagram".to_string(),
                ));
            }
            let _ = writeln!(stdout, "{}", to_diagram_text(&tree));
        }
    }
    Ok(0)
}

fn cmd_unlinked(args: UnlinkedArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let tree = load_tree(&args.tree)?;
    let p = parse_edge_set(&args.p, &tree)?;
    let q = parse_edge_set(&args.q, &tree)?;
    let pq = on_one_side(&tree, &p, &q);
    let qp = on_one_side(&tree, &q, &p);
    let _ = writeln!(stdout, "p on one side of q: {}", yes_no(pq));
    let _ = writeln!(stdout, "q on one side of p: {}", yes_no(qp));
    let _ = writeln!(stdout, "unlinked: {}", yes_no(pq && qp));
    Ok(if pq && qp { 0 } else { 1 })
}

fn cmd_check(args: CheckArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_tree(&args.g)?;
    let h = load_tree(&args.h)?;
    let bijection = parse_bijection(&args.bijection, &g, &h)?;
    match crate::realize::is_realizing(&g, &h, &bijection)? {
        Verdict::Realizing => {
            let _ = writeln!(stdout, "realizing: yes");
            Ok(0)
        }
        Verdict::Violation {
            first,
            second,
            failed,
        } => {
            let direction = match failed {
                SideCheck::FirstOnOneSideOfSecond => "first-on-second",
                SideCheck::SecondOnOneSideOfFirst => "second-on-first",
            };
            let _ = writeln!(stdout, "realizing: no");
            let _ = writeln!(stdout, "violating-pair: ({first}, {second})");
            let _ = writeln!(stdout, "failed-direction: {direction}");
            Ok(1)
        }
    }
}

fn write_search_report(report: &SearchReport, stdout: &mut dyn Write) -> i32 {
    let strategy = match report.strategy {
        Strategy::Brute => "brute",
        Strategy::Pruned => "pruned",
    };
    let _ = writeln!(stdout, "strategy: {strategy}");
    match &report.witness {
        Some(w) => {
            let _ = writeln!(stdout, "witness: {}", w.to_text());
        }
        None => {
            let _ = writeln!(stdout, "witness: none");
        }
    }
    let _ = writeln!(stdout, "nodes: {}", report.nodes_explored);
    let _ = writeln!(stdout, "elapsed-ms: {}", report.elapsed.as_millis());
    if report.witness.is_some() {
        0
    } else {
        1
    }
}

fn cmd_search(args: SearchArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_tree(&args.g)?;
    let h = load_tree(&args.h)?;
    if args.all {
        if !matches!(args.strategy, StrategyArg::Brute) {
            return Err(CliError::Usage(
                "--all is exhaustive and requires --strategy brute".to_string(),
            ));
        }
        let report = count_realizing(&g, &h)?;
        let _ = writeln!(stdout, "strategy: brute");
        let _ = writeln!(stdout, "realizing-count: {}", report.realizing);
        let _ = writeln!(stdout, "candidates: {}", report.candidates);
        let _ = writeln!(stdout, "elapsed-ms: {}", report.elapsed.as_millis());
        return Ok(if report.realizing > 0 { 0 } else { 1 });
    }
    let report = match args.strategy {
        StrategyArg::Brute => brute_force_find(&g, &h)?,
        StrategyArg::Pruned => find_realizing(&g, &h, &SearchOptions::default())?,
    };
    Ok(write_search_report(&report, stdout))
}

fn cmd_lando(args: LandoArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_tree(&args.g)?;
    let h = load_tree(&args.h)?;
    let report = decide_lando(&g, &h)?;
    match &report.witness {
        Some(w) => {
            let _ = writeln!(stdout, "realizable: yes");
            let _ = writeln!(stdout, "witness: {}", w.to_text());
            Ok(0)
        }
        None => {
            let _ = writeln!(stdout, "realizable: no");
            Ok(1)
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

struct Row {
    canonical_g: String,
    canonical_h: String,
    realizable: bool,
    witness: String,
    nodes: u64,
}

const CSV_HEADER: &str = "canonical_g,canonical_h,realizable,witness,nodes,millis";

fn write_rows(path: &Path, rows: &[Row]) -> Result<(), CliError> {
    let mut out = String::with_capacity(rows.len() * 48 + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        // The millis column is fixed at 0 so runs are byte-identical;
        // wall-clock timings go to stderr instead.
        out.push_str(&format!(
            "{},{},{},{},{},0\n",
            row.canonical_g,
            row.canonical_h,
            yes_no(row.realizable),
            csv_field(&row.witness),
            row.nodes
        ));
    }
    fs::write(path, out).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn decide_rows<T: Sync>(
    work: &[T],
    jobs: usize,
    f: impl Fn(&T) -> Row + Sync + Send,
) -> Result<Vec<Row>, CliError> {
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".to_string()));
    }
    if jobs == 1 {
        return Ok(work.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    // Indexed parallel map collects in input order, so output is identical
    // to the sequential run.
    Ok(pool.install(|| work.par_iter().map(f).collect()))
}

fn cmd_census(
    args: CensusArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut rows: Vec<Row> = Vec::new();
    let mut non_realizable = 0u64;
    for k in 0..=args.max_edges {
        let started = std::time::Instant::now();
        let trees = free_trees(k);
        let forms: Vec<String> = trees.iter().map(canonical_form).collect();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..trees.len() {
            for j in i..trees.len() {
                pairs.push((i, j));
            }
        }
        let k_rows = decide_rows(&pairs, args.jobs, |&(i, j)| {
            let report = decide_lando(&trees[i], &trees[j]).expect("equal edge counts");
            Row {
                canonical_g: forms[i].clone(),
                canonical_h: forms[j].clone(),
                realizable: report.witness.is_some(),
                witness: report
                    .witness
                    .map(|w| w.to_text())
                    .unwrap_or_default(),
                nodes: report.nodes_explored,
            }
        })?;
        let bad = k_rows.iter().filter(|r| !r.realizable).count() as u64;
        non_realizable += bad;
        let _ = writeln!(
            stderr,
            "census: k={k} pairs={} non-realizable={bad} elapsed-ms={}",
            k_rows.len(),
            started.elapsed().as_millis()
        );
        rows.extend(k_rows);
    }
    write_rows(&args.out, &rows)?;
    let _ = writeln!(stdout, "pairs: {}", rows.len());
    let _ = writeln!(stdout, "non-realizable: {non_realizable}");
    let _ = writeln!(stdout, "rows-written: {}", rows.len());
    Ok(0)
}

fn cmd_problem2(
    args: CensusArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut rows: Vec<Row> = Vec::new();
    let mut non_realizable = 0u64;
    for k in 0..=args.max_edges {
        let started = std::time::Instant::now();
        let trees = free_trees(k);
        let forms: Vec<String> = trees.iter().map(canonical_form).collect();
        let path = path_tree(k);
        let path_form = canonical_form(&path);
        let indices: Vec<usize> = (0..trees.len()).collect();
        let k_rows = decide_rows(&indices, args.jobs, |&i| {
            let report = decide_lando(&trees[i], &path).expect("equal edge counts");
            Row {
                canonical_g: forms[i].clone(),
                canonical_h: path_form.clone(),
                realizable: report.witness.is_some(),
                witness: report
                    .witness
                    .map(|w| w.to_text())
                    .unwrap_or_default(),
                nodes: report.nodes_explored,
            }
        })?;
        for row in &k_rows {
            if !row.realizable {
                non_realizable += 1;
                let _ = writeln!(
                    stderr,
                    "problem2: NON-REALIZABLE k={k} g={}",
                    row.canonical_g
                );
            }
        }
        let _ = writeln!(
            stderr,
            "problem2: k={k} trees={} elapsed-ms={}",
            k_rows.len(),
            started.elapsed().as_millis()
        );
        rows.extend(k_rows);
    }
    write_rows(&args.out, &rows)?;
    let _ = writeln!(stdout, "pairs: {}", rows.len());
    let _ = writeln!(stdout, "non-realizable: {non_realizable}");
    let _ = writeln!(stdout, "rows-written: {}", rows.len());
    Ok(0)
}
