//! Command-line surface: argument definitions, the four commands and the
//! versioned JSON run report.
//!
//! Exit codes: 0 when every check passes, 2 when a verified counterexample
//! was found (witnesses are dumped as graph6), 1 on operational errors.
//! Flags take precedence over `WSZ_SHARDS` / `WSZ_DEEP`, which take
//! precedence over defaults.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, BufReader, Read};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{
    all_edge_splits_bfs, is_connected, is_tree, tree_edge_splits, Graph, GraphError,
};
use crate::graph6::{
    parse_graph6, read_graph6_stream, write_graph6, ErrorPolicy, Graph6Error, MAX_BUILTIN_ORDER,
};
use crate::index::{abc, star_wsz_closed_form, szeged, weighted_szeged, wiener, IndexKind};
use crate::samples;
use crate::search::{
    self, check_bipartite_maximum, extremal_graphs, extremal_trees, regenerate_table, Budget,
    Direction, GraphSource, SearchError, TableRow, DEEP_MAX_TREE_ORDER, DEFAULT_MAX_TREE_ORDER,
};
use crate::transforms::{
    check_all_propositions, contract_to_leaf, detect_rays, find_internal_leaf_edges,
    transform_truncate_4ray, transform_two_2rays_leaf, transform_two_3rays, transform_two_leaves,
    violations_4ray, violations_two_3rays, TransformOutcome,
};
use crate::treegen::{decode, enumerate_trees, TreeCode};

pub const SCHEMA_VERSION: &str = "wsz-report/1";

/// Orders up to which transformation instances are taken exhaustively from
/// the tree enumerator; seeded random instances are used beyond.
const EXHAUSTIVE_INSTANCE_ORDER: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{source_name} line {line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Search(#[from] SearchError),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Graph6(#[from] Graph6Error),
    #[error("{0}")]
    Transform(#[from] crate::transforms::TransformError),
}

#[derive(Debug, Parser)]
#[command(
    name = "wsz",
    version,
    about = "Weighted Szeged index: indices, extremal search and verification"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Directory for report.json and graph6 dumps.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall times and shard count in the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Worker shards for tree scans.
    #[arg(long, env = "WSZ_SHARDS", default_value_t = 1)]
    pub shards: usize,
    /// Allow tree orders above 16 (up to 25).
    #[arg(long, env = "WSZ_DEEP", default_value_t = false, value_parser = clap::builder::BoolishValueParser::new())]
    pub deep: bool,
    /// Wall-clock cap in seconds.
    #[arg(long)]
    pub time_cap: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            shards: self.shards.max(1),
            time_cap: self.time_cap.map(Duration::from_secs_f64),
        }
    }

    fn max_tree_order(&self) -> usize {
        if self.deep {
            DEEP_MAX_TREE_ORDER
        } else {
            DEFAULT_MAX_TREE_ORDER
        }
    }

    fn check_tree_order(&self, n: usize) -> Result<(), CliError> {
        if n > self.max_tree_order() {
            let hint = if self.deep {
                ""
            } else {
                " (pass --deep to go up to 25)"
            };
            return Err(CliError::Usage(format!(
                "budget: n = {n} exceeds the tree-order limit {}{hint}",
                self.max_tree_order()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute W, Sz, wSz and ABC for input graphs.
    Index(IndexArgs),
    /// Exhaustive extremal search over trees or connected graphs.
    Search(SearchArgs),
    /// Machine-check the extremal results and conjectures over a range of orders.
    Verify(VerifyArgs),
    /// Regenerate the minimal-tree table.
    Table(TableArgs),
}

#[derive(Debug, Clone, Args)]
pub struct IndexArgs {
    /// Input files (graph6 lines, or edge lists with --edge-list); `-` is stdin.
    pub inputs: Vec<PathBuf>,
    /// Inline graph6 record; repeatable.
    #[arg(long = "g6")]
    pub graph6: Vec<String>,
    /// Inputs are edge lists: "n m" header then m lines "u v", 0-based.
    #[arg(long)]
    pub edge_list: bool,
    /// Include the per-edge split breakdown.
    #[arg(long)]
    pub edges: bool,
    /// Report disconnected graphs as skipped instead of failing.
    #[arg(long)]
    pub skip_disconnected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Trees,
    Graphs,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = IndexKind::Wsz)]
    pub objective: IndexKind,
    #[arg(long, value_enum, default_value_t = Direction::Min)]
    pub direction: Direction,
    /// Search trees (default) or connected graphs (built-in up to 7, or --input).
    #[arg(long, value_enum, default_value_t = GraphClass::Trees)]
    pub class: GraphClass,
    /// graph6 file of connected graphs for --class graphs.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub skip_invalid: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum VerifyTarget {
    /// Star maximality among trees, plus contraction monotonicity.
    #[value(name = "theorem1")]
    #[serde(rename = "theorem1")]
    Theorem1,
    /// Balanced complete bipartite maximum among bipartite graphs.
    #[value(name = "prop2")]
    #[serde(rename = "prop2")]
    Prop2,
    /// Degree ≥ 10 vertex with two 2-rays and a leaf.
    #[value(name = "trans1")]
    #[serde(rename = "trans1")]
    Trans1,
    /// Degree ≥ 6 vertex with two leaves.
    #[value(name = "trans2")]
    #[serde(rename = "trans2")]
    Trans2,
    /// 4-rays; delta 2n − 12.
    #[value(name = "trans3")]
    #[serde(rename = "trans3")]
    Trans3,
    /// Degree-3 vertex with two 3-rays; delta 2.
    #[value(name = "trans4")]
    #[serde(rename = "trans4")]
    Trans4,
    /// Minimum over connected graphs attained by a tree.
    #[value(name = "minG")]
    #[serde(rename = "minG")]
    MinG,
    /// Maximum over connected graphs attained only by the balanced complete bipartite graph.
    #[value(name = "maxG")]
    #[serde(rename = "maxG")]
    MaxG,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub target: VerifyTarget,
    /// Inclusive range such as `4..10`, or a single order.
    #[arg(long, value_parser = parse_range)]
    pub n_range: RangeInclusive<usize>,
    /// graph6 files for orders beyond the built-in enumerator (minG/maxG).
    #[arg(long = "input")]
    pub inputs: Vec<PathBuf>,
    /// Random instances per order for transformation targets.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Json,
    Csv,
    Graph6,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_range, default_value = "7..16")]
    pub n_range: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    pub format: TableFormat,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single order.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("invalid range {s:?}; expected a..b or n");
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let n = num(s)?;
            n..=n
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

/// Versioned, deterministic run report. Wall times and shard counts live in
/// `run_info`, which is only present with `--timings`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub complete: bool,
    pub exit_status: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run_info: Option<Value>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// What a command produced: the report, an optional non-JSON payload for
/// stdout, and named dump files.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: RunReport,
    pub payload: Option<String>,
    pub dumps: Vec<(String, String)>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_status
    }

    /// Text for stdout: the payload if any, else the JSON report.
    pub fn stdout(&self) -> String {
        self.payload
            .clone()
            .unwrap_or_else(|| self.report.to_json())
    }

    pub fn write_to(&self, dir: &Path) -> Result<(), CliError> {
        let io_err = |p: &Path| {
            let path = p.display().to_string();
            move |source| CliError::Io { path, source }
        };
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let report = dir.join("report.json");
        fs::write(&report, self.report.to_json()).map_err(io_err(&report))?;
        for (name, contents) in &self.dumps {
            let path = dir.join(name);
            fs::write(&path, contents).map_err(io_err(&path))?;
        }
        Ok(())
    }
}

struct Run {
    command: &'static str,
    timings: bool,
    started: Instant,
}

impl Run {
    fn finish(
        self,
        config: Value,
        results: Value,
        exit_status: i32,
        complete: bool,
        shards: Option<usize>,
        dumps: Vec<(String, String)>,
    ) -> Outcome {
        let run_info = self.timings.then(|| {
            json!({
                "elapsed_seconds": self.started.elapsed().as_secs_f64(),
                "shards": shards,
            })
        });
        Outcome {
            report: RunReport {
                schema: SCHEMA_VERSION,
                command: self.command.to_string(),
                config,
                results,
                complete,
                exit_status,
                run_info,
            },
            payload: None,
            dumps,
        }
    }
}

/// Runs a parsed command line. Operational errors are returned as `Err`
/// (exit 1); failed checks produce an `Ok` outcome with exit status 2.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Index(args) => cmd_index(args, &cli.common),
        Command::Search(args) => cmd_search(args, &cli.common),
        Command::Verify(args) => cmd_verify(args, &cli.common),
        Command::Table(args) => cmd_table(args, &cli.common),
    }
}

/// Report for an operational error.
pub fn error_report(command: &str, err: &CliError) -> RunReport {
    let partial = match err {
        CliError::Search(SearchError::BudgetExceeded { partial, .. }) => {
            serde_json::to_value(partial).ok()
        }
        _ => None,
    };
    RunReport {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        config: Value::Null,
        results: json!({ "error": err.to_string(), "partial_rows": partial }),
        complete: false,
        exit_status: 1,
        run_info: None,
    }
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>, CliError> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = fs::File::open(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Box::new(BufReader::new(file)))
}

/// Parses an edge-list document: `n m` then `m` lines `u v`, 0-based.
/// Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str, source_name: &str) -> Result<Graph, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let parse_err = |line: usize, message: String| CliError::Parse {
        source_name: source_name.to_string(),
        line,
        message,
    };
    let pair = |line: usize, l: &str| -> Result<(usize, usize), CliError> {
        let nums: Vec<usize> = l
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| parse_err(line, format!("{e}")))?;
        match nums.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(parse_err(line, "expected two integers".into())),
        }
    };
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing \"n m\" header".into()))?;
    let (n, m) = pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last = line;
    for (line, l) in lines {
        edges.push(pair(line, l)?);
        last = line;
    }
    if edges.len() != m {
        return Err(parse_err(
            last,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges).map_err(|e| parse_err(line, e.to_string()))
}

fn index_row(g: &Graph, source: &str, line: usize, with_edges: bool) -> Result<Value, CliError> {
    let mut row = json!({
        "source": source,
        "line": line,
        "graph6": write_graph6(g),
        "n": g.order(),
        "m": g.size(),
        "wiener": wiener(g)?,
        "szeged": szeged(g)?,
        "wsz": weighted_szeged(g)?,
        "abc": abc(g)?,
    });
    if with_edges {
        let splits = if is_tree(g) {
            tree_edge_splits(g)?
        } else {
            all_edge_splits_bfs(g)?
        };
        row["edges"] = splits
            .iter()
            .map(|s| {
                json!({
                    "u": s.u, "v": s.v, "n_u": s.n_u, "n_v": s.n_v, "eq": s.eq,
                    "weight": g.degree(s.u) + g.degree(s.v),
                })
            })
            .collect();
    }
    Ok(row)
}

pub fn cmd_index(args: &IndexArgs, common: &CommonArgs) -> Result<Outcome, CliError> {
    let run = Run {
        command: "index",
        timings: common.timings,
        started: Instant::now(),
    };
    let mut graphs: Vec<(String, usize, Graph)> = Vec::new();
    for (i, text) in args.graph6.iter().enumerate() {
        let g = parse_graph6(text).map_err(|e| CliError::Parse {
            source_name: "--g6".into(),
            line: i + 1,
            message: e.to_string(),
        })?;
        graphs.push(("--g6".into(), i + 1, g));
    }
    for path in &args.inputs {
        let name = path.display().to_string();
        let reader = open_input(path)?;
        if args.edge_list {
            let mut text = String::new();
            let mut reader = reader;
            reader
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: name.clone(),
                    source,
                })?;
            graphs.push((name.clone(), 1, parse_edge_list(&text, &name)?));
        } else {
            for item in read_graph6_stream(reader.lines(), ErrorPolicy::Abort) {
                let (line, g) = item.map_err(|e| CliError::Parse {
                    source_name: name.clone(),
                    line: e.line,
                    message: e.kind.to_string(),
                })?;
                graphs.push((name.clone(), line, g));
            }
        }
    }

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (source, line, g) in &graphs {
        if g.order() == 0 || !is_connected(g) {
            if args.skip_disconnected {
                skipped.push(json!({ "source": source, "line": line, "graph6": write_graph6(g) }));
                continue;
            }
            return Err(CliError::Parse {
                source_name: source.clone(),
                line: *line,
                message: "graph is disconnected (use --skip-disconnected)".into(),
            });
        }
        rows.push(index_row(g, source, *line, args.edges)?);
    }
    let config = json!({
        "inputs": args.inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "g6": args.graph6,
        "edge_list": args.edge_list,
        "edges": args.edges,
        "skip_disconnected": args.skip_disconnected,
    });
    let results = json!({ "graphs": rows, "skipped": skipped });
    Ok(run.finish(config, results, 0, true, None, Vec::new()))
}

fn dump_graph6(graphs: &[Graph]) -> String {
    graphs.iter().map(|g| write_graph6(g) + "\n").collect()
}

pub fn cmd_search(args: &SearchArgs, common: &CommonArgs) -> Result<Outcome, CliError> {
    let run = Run {
        command: "search",
        timings: common.timings,
        started: Instant::now(),
    };
    let config = json!({
        "n": args.n,
        "objective": args.objective,
        "direction": args.direction,
        "class": args.class,
        "input": args.input.as_ref().map(|p| p.display().to_string()),
        "deep": args.budget.deep,
        "time_cap": args.budget.time_cap,
    });
    let dir = match args.direction {
        Direction::Min => "min",
        Direction::Max => "max",
    };
    let stem = format!("search_n{}_{}_{dir}", args.n, args.objective.name());
    let (results, graphs) = match args.class {
        GraphClass::Trees => {
            if args.n < 2 {
                return Err(CliError::Usage("search needs n >= 2".into()));
            }
            args.budget.check_tree_order(args.n)?;
            let record =
                extremal_trees(args.n, args.objective, args.direction, args.budget.budget())?;
            let graphs = record.attaining_graphs();
            let mut value = serde_json::to_value(&record).expect("records serialize");
            value["attaining_graph6"] = graphs.iter().map(write_graph6).collect();
            (value, graphs)
        }
        GraphClass::Graphs => {
            let policy = if args.skip_invalid {
                ErrorPolicy::Skip
            } else {
                ErrorPolicy::Abort
            };
            let source = match &args.input {
                Some(path) => GraphSource::Lines(Box::new(open_input(path)?.lines())),
                None if args.n <= MAX_BUILTIN_ORDER => GraphSource::BuiltIn(args.n),
                None => {
                    return Err(CliError::Usage(format!(
                    "built-in graph enumeration stops at n = {MAX_BUILTIN_ORDER}; supply --input"
                )))
                }
            };
            let record = extremal_graphs(source, args.objective, args.direction, policy)?;
            let graphs = record.attaining_graphs();
            (
                serde_json::to_value(&record).expect("records serialize"),
                graphs,
            )
        }
    };
    let dumps = vec![(format!("{stem}.g6"), dump_graph6(&graphs))];
    Ok(run.finish(config, results, 0, true, Some(args.budget.shards), dumps))
}

/// Per-order verification result.
#[derive(Debug, Clone, Serialize)]
struct Check {
    n: usize,
    pass: bool,
    details: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<String>,
}

impl Check {
    fn new(n: usize) -> Check {
        Check {
            n,
            pass: true,
            details: json!({}),
            witnesses: Vec::new(),
        }
    }

    fn fail(&mut self, witness: &Graph) {
        self.pass = false;
        if self.witnesses.len() < 16 {
            self.witnesses.push(write_graph6(witness));
        }
    }
}

fn check_theorem1(n: usize, budget: &BudgetArgs) -> Result<Check, CliError> {
    let mut check = Check::new(n);
    let record = extremal_trees(n, IndexKind::Wsz, Direction::Max, budget.budget())?;
    let star = TreeCode::of_tree(&Graph::star(n)).expect("stars are trees");
    let closed = star_wsz_closed_form(n as u64);
    let star_unique = record.attaining == vec![star] && record.value == closed;
    if !star_unique {
        for g in record.attaining_graphs() {
            check.fail(&g);
        }
    }
    let mut contractions = 0u64;
    let mut min_delta = i64::MAX;
    if (3..=DEFAULT_MAX_TREE_ORDER).contains(&n) {
        for code in enumerate_trees(n) {
            let t = decode(&code);
            for (u, v) in find_internal_leaf_edges(&t)? {
                let out = contract_to_leaf(&t, u, v)?;
                let recomputed = wsz_i64(&out.output)? - wsz_i64(&t)?;
                contractions += 1;
                min_delta = min_delta.min(out.delta);
                if out.delta <= 0 || out.delta != recomputed {
                    check.fail(&t);
                }
            }
        }
    }
    check.details = json!({
        "max_value": record.value,
        "closed_form": closed,
        "star_unique_maximizer": star_unique,
        "trees": record.examined,
        "contractions": contractions,
        "min_contraction_delta": (contractions > 0).then_some(min_delta),
    });
    Ok(check)
}

fn wsz_i64(g: &Graph) -> Result<i64, CliError> {
    let v = weighted_szeged(g)?.as_int().expect("wSz is exact");
    i64::try_from(v).map_err(|_| CliError::Graph(GraphError::Overflow))
}

fn check_prop2(n: usize) -> Result<Check, CliError> {
    let mut check = Check::new(n);
    let k = search::balanced_bipartite(n);
    let direct = weighted_szeged(&k)?;
    let closed = crate::index::balanced_bipartite_wsz_closed_form(n as u64);
    if direct != closed {
        check.fail(&k);
    }
    let mut details = json!({ "closed_form": closed, "direct": direct });
    if n <= MAX_BUILTIN_ORDER {
        let scan = check_bipartite_maximum(n)?;
        if !(scan.unique_maximizer_is_balanced && scan.bound_respected) {
            check.pass = false;
        }
        details["exhaustive"] = serde_json::to_value(&scan).expect("checks serialize");
    }
    check.details = details;
    Ok(check)
}

/// Applies `transform` to every instance, checking the recorded delta
/// against a from-scratch recomputation and `expect`.
fn run_instances(
    check: &mut Check,
    instances: impl IntoIterator<Item = Result<TransformOutcome, CliError>>,
    expect: impl Fn(&TransformOutcome) -> bool,
) -> Result<Value, CliError> {
    let mut count = 0u64;
    let mut deltas = std::collections::BTreeSet::new();
    let mut min_delta = i64::MAX;
    for out in instances {
        let out = out?;
        let recomputed = wsz_i64(&out.input)? - wsz_i64(&out.output)?;
        count += 1;
        min_delta = min_delta.min(out.delta);
        if deltas.len() < 8 {
            deltas.insert(out.delta);
        }
        if out.delta != recomputed || !expect(&out) {
            check.fail(&out.input);
        }
    }
    Ok(json!({
        "instances": count,
        "min_delta": (count > 0).then_some(min_delta),
        "distinct_deltas": deltas.into_iter().collect::<Vec<_>>(),
    }))
}

fn minimal_trees_clean(
    check: &mut Check,
    n: usize,
    budget: &BudgetArgs,
    predicate: impl Fn(&Graph) -> Result<bool, CliError>,
) -> Result<Value, CliError> {
    if n > budget.max_tree_order() {
        return Ok(json!("skipped: order above tree budget"));
    }
    let record = extremal_trees(n, IndexKind::Wsz, Direction::Min, budget.budget())?;
    for g in record.attaining_graphs() {
        if !predicate(&g)? {
            check.fail(&g);
        }
    }
    Ok(json!({ "wsz_min": record.value, "minimal_trees": record.attaining.len() }))
}

fn check_transform(target: VerifyTarget, n: usize, args: &VerifyArgs) -> Result<Check, CliError> {
    let mut check = Check::new(n);
    let mut rng =
        ChaCha8Rng::seed_from_u64(args.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let samples_n = args.samples;
    let (minimal, instances) = match target {
        VerifyTarget::Trans2 => {
            let minimal = if n >= 4 {
                minimal_trees_clean(&mut check, n, &args.budget, |g| {
                    Ok(check_all_propositions(g)?.two_leaves.is_empty())
                })?
            } else {
                json!("not applicable below n = 4")
            };
            let instances = if n >= 7 {
                let mut v = Vec::new();
                for _ in 0..samples_n {
                    let degree = rand::Rng::gen_range(&mut rng, 6..n);
                    let (t, r) = samples::plant_two_leaves(n, degree, &mut rng);
                    v.push(transform_two_leaves(&t, r).map_err(CliError::from));
                }
                run_instances(&mut check, v, |o| o.guaranteed_positive && o.delta > 0)?
            } else {
                json!("no degree-6 instance fits")
            };
            (minimal, instances)
        }
        VerifyTarget::Trans1 => {
            let minimal = minimal_trees_clean(&mut check, n, &args.budget, |g| {
                Ok(check_all_propositions(g)?.two_2rays_leaf.is_empty())
            })?;
            let instances = if n >= 13 {
                let mut v = Vec::new();
                for _ in 0..samples_n {
                    let degree = rand::Rng::gen_range(&mut rng, 10..n - 2);
                    let (t, r) = samples::plant_two_2rays_leaf(n, degree, &mut rng);
                    v.push(transform_two_2rays_leaf(&t, r).map_err(CliError::from));
                }
                run_instances(&mut check, v, |o| o.guaranteed_positive && o.delta > 0)?
            } else {
                json!("no degree-10 instance fits")
            };
            (minimal, instances)
        }
        VerifyTarget::Trans3 => {
            let minimal = minimal_trees_clean(&mut check, n, &args.budget, |g| {
                Ok(violations_4ray(g)?.is_empty())
            })?;
            let expected = 2 * n as i64 - 12;
            let mut v = Vec::new();
            if n <= EXHAUSTIVE_INSTANCE_ORDER {
                for code in enumerate_trees(n) {
                    let t = decode(&code);
                    for r in 0..n {
                        for ray in detect_rays(&t, r)?.into_iter().filter(|x| x.order() == 4) {
                            v.push(transform_truncate_4ray(&t, &ray).map_err(CliError::from));
                        }
                    }
                }
            } else {
                for _ in 0..samples_n {
                    let (t, _) = samples::plant_4ray(n, &mut rng);
                    let t = samples::shuffle_labels(&t, &mut rng);
                    let ray = (0..n)
                        .flat_map(|r| detect_rays(&t, r).unwrap_or_default())
                        .find(|x| x.order() == 4)
                        .expect("planted 4-ray survives relabeling");
                    v.push(transform_truncate_4ray(&t, &ray).map_err(CliError::from));
                }
            }
            let inst = run_instances(&mut check, v, |o| o.delta == expected)?;
            (
                minimal,
                json!({ "expected_delta": expected, "result": inst }),
            )
        }
        VerifyTarget::Trans4 => {
            let minimal = minimal_trees_clean(&mut check, n, &args.budget, |g| {
                Ok(violations_two_3rays(g)?.is_empty())
            })?;
            let mut v = Vec::new();
            if n <= EXHAUSTIVE_INSTANCE_ORDER {
                for code in enumerate_trees(n) {
                    let t = decode(&code);
                    for r in violations_two_3rays(&t)? {
                        v.push(transform_two_3rays(&t, r).map_err(CliError::from));
                    }
                }
            } else {
                for _ in 0..samples_n {
                    let (t, r) = samples::plant_two_3rays(n, &mut rng);
                    v.push(transform_two_3rays(&t, r).map_err(CliError::from));
                }
            }
            let inst = run_instances(&mut check, v, |o| o.delta == 2)?;
            (minimal, json!({ "expected_delta": 2, "result": inst }))
        }
        _ => unreachable!("only transformation targets"),
    };
    check.details = json!({ "minimal_trees": minimal, "transformations": instances });
    Ok(check)
}

fn load_streams(inputs: &[PathBuf]) -> Result<Vec<(String, usize, Graph)>, CliError> {
    let mut graphs = Vec::new();
    for path in inputs {
        let name = path.display().to_string();
        for item in read_graph6_stream(open_input(path)?.lines(), ErrorPolicy::Abort) {
            let (line, g) = item.map_err(|e| CliError::Parse {
                source_name: name.clone(),
                line: e.line,
                message: e.kind.to_string(),
            })?;
            graphs.push((name.clone(), line, g));
        }
    }
    Ok(graphs)
}

fn check_conjecture(
    target: VerifyTarget,
    n: usize,
    streams: &[(String, usize, Graph)],
) -> Result<Check, CliError> {
    let mut check = Check::new(n);
    let source = if n <= MAX_BUILTIN_ORDER {
        GraphSource::BuiltIn(n)
    } else {
        let graphs: Vec<Graph> = streams
            .iter()
            .filter(|(_, _, g)| g.order() == n)
            .map(|(_, _, g)| g.clone())
            .collect();
        if graphs.is_empty() {
            return Err(CliError::Usage(format!(
                "n = {n} is beyond the built-in enumerator (max {MAX_BUILTIN_ORDER}); supply --input with graphs of that order"
            )));
        }
        GraphSource::Graphs(graphs)
    };
    let verdict = match target {
        VerifyTarget::MinG => search::verify_conjecture_min(source, ErrorPolicy::Skip)?,
        _ => search::verify_conjecture_max(source, ErrorPolicy::Skip)?,
    };
    if let Some(w) = &verdict.witness {
        check.fail(w);
    }
    check.details = serde_json::to_value(&verdict).expect("verdicts serialize");
    Ok(check)
}

pub fn cmd_verify(args: &VerifyArgs, common: &CommonArgs) -> Result<Outcome, CliError> {
    let run = Run {
        command: "verify",
        timings: common.timings,
        started: Instant::now(),
    };
    let (lo, hi) = (*args.n_range.start(), *args.n_range.end());
    let scope_err = |msg: String| Err(CliError::Usage(format!("scope: {msg}")));
    match args.target {
        VerifyTarget::Theorem1 | VerifyTarget::Trans1 | VerifyTarget::Trans2 => {
            if lo < 2 {
                return scope_err("tree targets need n >= 2".into());
            }
            args.budget.check_tree_order(hi)?;
        }
        VerifyTarget::Trans3 => {
            if lo < 7 {
                return scope_err("4-ray truncation needs n >= 7".into());
            }
            if hi > 40 {
                return scope_err("trans3 instances are limited to n <= 40".into());
            }
        }
        VerifyTarget::Trans4 => {
            if lo < 8 {
                return scope_err("two-3-ray transformation needs n >= 8".into());
            }
            if hi > 40 {
                return scope_err("trans4 instances are limited to n <= 40".into());
            }
        }
        VerifyTarget::Prop2 => {
            if lo < 2 || hi > 60 {
                return scope_err("prop2 covers 2..60".into());
            }
        }
        VerifyTarget::MinG | VerifyTarget::MaxG => {
            if lo < 2 {
                return scope_err("conjecture targets need n >= 2".into());
            }
        }
    }
    let streams = load_streams(&args.inputs)?;

    let mut checks = Vec::new();
    for n in args.n_range.clone() {
        let check = match args.target {
            VerifyTarget::Theorem1 => check_theorem1(n, &args.budget)?,
            VerifyTarget::Prop2 => check_prop2(n)?,
            VerifyTarget::Trans1
            | VerifyTarget::Trans2
            | VerifyTarget::Trans3
            | VerifyTarget::Trans4 => check_transform(args.target, n, args)?,
            VerifyTarget::MinG | VerifyTarget::MaxG => check_conjecture(args.target, n, &streams)?,
        };
        checks.push(check);
    }
    let all_pass = checks.iter().all(|c| c.pass);
    let mut witnesses = String::new();
    for c in &checks {
        for w in &c.witnesses {
            let _ = writeln!(witnesses, "{w}");
        }
    }
    let target_name = serde_json::to_value(args.target).expect("targets serialize");
    let dumps = if witnesses.is_empty() {
        Vec::new()
    } else {
        vec![(
            format!("witnesses_{}.g6", target_name.as_str().unwrap_or("target")),
            witnesses,
        )]
    };
    let config = json!({
        "target": target_name,
        "n_range": [lo, hi],
        "inputs": args.inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "samples": args.samples,
        "seed": args.seed,
        "deep": args.budget.deep,
    });
    let results = json!({ "pass": all_pass, "per_n": checks });
    let exit = if all_pass { 0 } else { 2 };
    Ok(run.finish(config, results, exit, true, Some(args.budget.shards), dumps))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    wsz_min: String,
    ties: usize,
    abc_min: String,
    abc_coincident: bool,
    propositions_clean: bool,
    graph6: &'a str,
    degree_sequence: String,
    abc: String,
    abc_minimal: bool,
}

fn table_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        for t in &row.trees {
            let degrees: Vec<String> = t.degree_sequence.iter().map(ToString::to_string).collect();
            w.serialize(CsvRow {
                n: row.n,
                wsz_min: row.wsz_min.to_string(),
                ties: row.trees.len(),
                abc_min: row.abc_min.to_string(),
                abc_coincident: row.abc_coincident,
                propositions_clean: row.propositions_clean,
                graph6: &t.graph6,
                degree_sequence: degrees.join(" "),
                abc: t.abc.to_string(),
                abc_minimal: t.abc_minimal,
            })
            .expect("in-memory CSV writes succeed");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flushes")).expect("CSV output is UTF-8")
}

fn table_graph6(rows: &[TableRow]) -> String {
    rows.iter()
        .flat_map(|r| &r.trees)
        .map(|t| t.graph6.clone() + "\n")
        .collect()
}

pub fn cmd_table(args: &TableArgs, common: &CommonArgs) -> Result<Outcome, CliError> {
    let run = Run {
        command: "table",
        timings: common.timings,
        started: Instant::now(),
    };
    let (lo, hi) = (*args.n_range.start(), *args.n_range.end());
    if lo < 7 || hi > 25 {
        return Err(CliError::Usage(format!(
            "table range must lie within 7..25, got {lo}..{hi}"
        )));
    }
    args.budget.check_tree_order(hi)?;
    let rows = regenerate_table(args.n_range.clone(), args.budget.budget())?;
    let clean = rows.iter().all(|r| r.propositions_clean);
    let config = json!({
        "n_range": [lo, hi],
        "format": args.format,
        "deep": args.budget.deep,
        "time_cap": args.budget.time_cap,
    });
    let timings: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "n": r.n, "seconds": r.elapsed.as_secs_f64(), "trees": r.examined }))
        .collect();
    let dumps = vec![
        ("table.csv".to_string(), table_csv(&rows)),
        ("table.g6".to_string(), table_graph6(&rows)),
    ];
    let payload = match args.format {
        TableFormat::Json => None,
        TableFormat::Csv => Some(table_csv(&rows)),
        TableFormat::Graph6 => Some(table_graph6(&rows)),
    };
    let results = json!({ "rows": rows, "all_propositions_clean": clean });
    let mut outcome = run.finish(
        config,
        results,
        if clean { 0 } else { 2 },
        true,
        Some(args.budget.shards),
        dumps,
    );
    if let Some(info) = outcome.report.run_info.as_mut() {
        info["per_n"] = Value::Array(timings);
    }
    outcome.payload = payload;
    Ok(outcome)
}

/// Entry point shared by the binary: parses, runs, prints, writes dumps and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command = match &cli.command {
        Command::Index(_) => "index",
        Command::Search(_) => "search",
        Command::Verify(_) => "verify",
        Command::Table(_) => "table",
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout());
            if let Some(dir) = &cli.common.out {
                if let Err(e) = outcome.write_to(dir) {
                    eprintln!("error: {e}");
                    return 1;
                }
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            let report = error_report(command, &e);
            if let Some(dir) = &cli.common.out {
                let _ = fs::create_dir_all(dir)
                    .and_then(|_| fs::write(dir.join("report.json"), report.to_json()));
            }
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("wsz").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..10").unwrap(), 4..=10);
        assert_eq!(parse_range("4..=10").unwrap(), 4..=10);
        assert_eq!(parse_range("14").unwrap(), 14..=14);
        assert!(parse_range("10..4").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n2 3\n", "p4").unwrap();
        assert_eq!(g, Graph::path(4));
        let g = parse_edge_list("# comment\n3 2\n\n0 1 # first\n1 2\n", "x").unwrap();
        assert_eq!(g, Graph::path(3));
        let err = parse_edge_list("3 2\n0 1\n", "short").unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
        let err = parse_edge_list("3 1\n0 x\n", "bad").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
    }

    #[test]
    fn index_k4() {
        let cli = parse(&["index", "--g6", "C~"]);
        let out = run(&cli).unwrap();
        let row = &out.report.results["graphs"][0];
        assert_eq!(row["wsz"], 36);
        assert_eq!(row["wiener"], 6);
        assert_eq!(row["szeged"], 6);
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn index_empty_input() {
        let out = run(&parse(&["index"])).unwrap();
        assert_eq!(out.report.results["graphs"], json!([]));
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn index_disconnected_policy() {
        let disconnected = write_graph6(&Graph::new(4, &[(0, 1), (2, 3)]).unwrap());
        assert!(run(&parse(&["index", "--g6", &disconnected])).is_err());
        let out = run(&parse(&[
            "index",
            "--g6",
            &disconnected,
            "--skip-disconnected",
            "--g6",
            "A_",
        ]))
        .unwrap();
        assert_eq!(out.report.results["skipped"].as_array().unwrap().len(), 1);
        assert_eq!(out.report.results["graphs"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn search_star() {
        let out = run(&parse(&[
            "search",
            "--n",
            "5",
            "--objective",
            "wsz",
            "--direction",
            "max",
        ]))
        .unwrap();
        assert_eq!(out.report.results["value"], 80);
        assert_eq!(
            out.report.results["attaining_graph6"],
            json!([write_graph6(&decode(&"0,1,1,1,1".parse().unwrap()))])
        );
        assert_eq!(out.dumps.len(), 1);
    }

    #[test]
    fn search_refuses_large_orders() {
        let err = run(&parse(&["search", "--n", "30"])).unwrap_err();
        assert!(err.to_string().contains("budget"));
        let err = run(&parse(&["search", "--n", "17"])).unwrap_err();
        assert!(err.to_string().contains("--deep"));
    }

    #[test]
    fn verify_scope_errors() {
        assert!(run(&parse(&["verify", "--target", "maxG", "--n-range", "8..8"])).is_err());
        assert!(run(&parse(&[
            "verify",
            "--target",
            "trans3",
            "--n-range",
            "6..8"
        ]))
        .is_err());
    }

    #[test]
    fn verify_conjecture_from_stream() {
        let dir = tempfile::tempdir().unwrap();
        // a lone cycle beyond the built-in range is its own minimum, and not a tree
        let big = dir.path().join("c8.g6");
        fs::write(&big, write_graph6(&Graph::cycle(8)) + "\n").unwrap();
        let cli = parse(&[
            "verify",
            "--target",
            "minG",
            "--n-range",
            "8",
            "--input",
            big.to_str().unwrap(),
        ]);
        let out = run(&cli).unwrap();
        assert_eq!(out.exit_code(), 2);
        assert_eq!(out.dumps.len(), 1);
        let witness = parse_graph6(out.dumps[0].1.trim()).unwrap();
        assert!(crate::graph6::is_isomorphic(&witness, &Graph::cycle(8)).unwrap());
    }

    #[test]
    fn table_formats() {
        let out = run(&parse(&["table", "--n-range", "7..8", "--format", "csv"])).unwrap();
        let csv = out.payload.unwrap();
        assert!(csv.starts_with("n,wsz_min,"));
        assert_eq!(csv.lines().count(), 3);
        let out = run(&parse(&["table", "--n-range", "7", "--format", "graph6"])).unwrap();
        assert_eq!(out.payload.unwrap().lines().count(), 1);
        assert!(run(&parse(&["table", "--n-range", "6..8"])).is_err());
    }

    #[test]
    fn timings_are_opt_in() {
        let out = run(&parse(&["search", "--n", "6"])).unwrap();
        assert!(out.report.run_info.is_none());
        let out = run(&parse(&[
            "--timings",
            "search",
            "--n",
            "6",
            "--shards",
            "3",
        ]))
        .unwrap();
        assert_eq!(out.report.run_info.unwrap()["shards"], 3);
    }
}
