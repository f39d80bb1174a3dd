//! Exhaustive extremal search over free trees and connected graphs,
//! conjecture verdicts, minimal-tree tables and ABC coincidence reports.
//!
//! Tree scans run one worker per shard of [`partition_stream`]; each worker
//! keeps a local best set and the sets are merged in shard order. Every
//! extremum carries the full set of attaining graphs, sorted by canonical
//! code, so results do not depend on the shard count.

use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{classify, is_connected, Graph, GraphError};
use crate::graph6::{
    canonical_form, enumerate_connected_graphs, read_graph6_stream, write_graph6, CanonicalLabel,
    ErrorPolicy, Graph6Error, StreamError,
};
use crate::index::{
    balanced_bipartite_wsz_closed_form, compute, IndexKind, IndexValue, LevelScorer,
};
use crate::transforms::{check_all_propositions, PropositionReport, TransformError};
use crate::treegen::{decode, partition_stream, TreeCode};

/// Largest tree order searched without the deep flag.
pub const DEFAULT_MAX_TREE_ORDER: usize = 16;
/// Largest tree order searched at all.
pub const DEEP_MAX_TREE_ORDER: usize = 25;

const DEADLINE_POLL: u64 = 1 << 14;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("order {0} is outside the supported range")]
    InvalidOrder(usize),
    #[error("budget exceeded at n = {n} after {examined} graphs")]
    BudgetExceeded {
        n: usize,
        examined: u64,
        /// Rows finished before the budget ran out; never a complete table.
        partial: Vec<TableRow>,
    },
    #[error("source contained no graphs")]
    EmptySource,
    #[error("record {index}: graph is disconnected")]
    Disconnected { index: usize },
    #[error("record {index}: order {found} differs from {expected}")]
    MixedOrders {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Min,
    Max,
}

/// How much of the search space a result covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Every free tree of the order.
    AllTrees,
    /// Every connected graph of the order, from the built-in enumerator.
    BuiltinExhaustive,
    /// Whatever an external stream contained; exhaustive only if the stream is.
    ExternalStream,
}

/// Shards and an optional wall-clock cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub shards: usize,
    pub time_cap: Option<Duration>,
}

impl Budget {
    pub fn shards(shards: usize) -> Budget {
        Budget {
            shards: shards.max(1),
            time_cap: None,
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::shards(1)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchRecord<C> {
    pub n: usize,
    pub objective: IndexKind,
    pub direction: Direction,
    pub value: IndexValue,
    /// All graphs attaining `value`, sorted by canonical code.
    pub attaining: Vec<C>,
    pub examined: u64,
    pub scope: Scope,
    /// Records dropped by a skip policy.
    pub skipped: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl<C: PartialEq> PartialEq for SearchRecord<C> {
    /// Content equality; wall time is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.objective == other.objective
            && self.direction == other.direction
            && self.value.cmp_tol(&other.value).is_eq()
            && self.attaining == other.attaining
            && self.examined == other.examined
            && self.scope == other.scope
            && self.skipped == other.skipped
    }
}

impl SearchRecord<TreeCode> {
    pub fn attaining_graphs(&self) -> Vec<Graph> {
        self.attaining.iter().map(decode).collect()
    }
}

impl SearchRecord<CanonicalLabel> {
    pub fn attaining_graphs(&self) -> Vec<Graph> {
        self.attaining
            .iter()
            .map(CanonicalLabel::to_graph)
            .collect()
    }
}

/// Running best set for one objective. Keeps every candidate within the
/// tie tolerance of the current best, which makes merging order-independent.
#[derive(Debug, Clone)]
struct BestSet<C> {
    direction: Direction,
    best: Option<IndexValue>,
    entries: Vec<(IndexValue, C)>,
}

impl<C: Ord> BestSet<C> {
    fn new(direction: Direction) -> BestSet<C> {
        BestSet {
            direction,
            best: None,
            entries: Vec::new(),
        }
    }

    /// Oriented comparison: `Less` means `a` is better than `b`.
    fn rank(&self, a: &IndexValue, b: &IndexValue) -> std::cmp::Ordering {
        match self.direction {
            Direction::Min => a.cmp_tol(b),
            Direction::Max => b.cmp_tol(a),
        }
    }

    fn strictly_better(&self, a: &IndexValue, b: &IndexValue) -> bool {
        match self.direction {
            Direction::Min => a.as_f64() < b.as_f64(),
            Direction::Max => a.as_f64() > b.as_f64(),
        }
    }

    fn offer(&mut self, value: IndexValue, code: impl FnOnce() -> C) {
        let Some(best) = self.best else {
            self.best = Some(value);
            self.entries.push((value, code()));
            return;
        };
        match self.rank(&value, &best) {
            std::cmp::Ordering::Greater => {}
            std::cmp::Ordering::Equal => {
                if self.strictly_better(&value, &best) {
                    self.best = Some(value);
                }
                self.entries.push((value, code()));
            }
            std::cmp::Ordering::Less => {
                self.best = Some(value);
                self.entries.push((value, code()));
                self.prune();
            }
        }
    }

    fn prune(&mut self) {
        let Some(best) = self.best else { return };
        let direction = self.direction;
        self.entries.retain(|(v, _)| match direction {
            Direction::Min => v.cmp_tol(&best).is_eq(),
            Direction::Max => best.cmp_tol(v).is_eq(),
        });
    }

    fn merge(mut self, other: BestSet<C>) -> BestSet<C> {
        for (v, c) in other.entries {
            self.offer(v, || c);
        }
        self
    }

    fn finish(mut self) -> Option<(IndexValue, Vec<C>)> {
        self.prune();
        let best = self.best?;
        let mut codes: Vec<C> = self.entries.into_iter().map(|(_, c)| c).collect();
        codes.sort_unstable();
        codes.dedup();
        Some((best, codes))
    }
}

/// One tree scan computing several objectives at once.
fn scan_trees(
    n: usize,
    objectives: &[(IndexKind, Direction)],
    budget: Budget,
) -> Result<Vec<SearchRecord<TreeCode>>, SearchError> {
    if !(1..=DEEP_MAX_TREE_ORDER).contains(&n) {
        return Err(SearchError::InvalidOrder(n));
    }
    let start = Instant::now();
    if budget.time_cap.is_some_and(|cap| cap.is_zero()) {
        return Err(SearchError::BudgetExceeded {
            n,
            examined: 0,
            partial: Vec::new(),
        });
    }
    let deadline = budget.time_cap.map(|cap| start + cap);
    let stop = AtomicBool::new(false);

    type WorkerResult = Result<(Vec<BestSet<TreeCode>>, u64), (GraphError, u64)>;
    let results: Vec<WorkerResult> = partition_stream(n, budget.shards)
        .into_par_iter()
        .map(|mut stream| {
            let mut scorer = LevelScorer::new();
            let mut sets: Vec<BestSet<TreeCode>> =
                objectives.iter().map(|&(_, d)| BestSet::new(d)).collect();
            let mut examined = 0u64;
            while let Some(levels) = stream.advance() {
                for (set, &(kind, _)) in sets.iter_mut().zip(objectives) {
                    let value = scorer.score(levels, kind).map_err(|e| (e, examined))?;
                    set.offer(value, || {
                        TreeCode::new(levels.to_vec()).expect("enumerator emits valid codes")
                    });
                }
                examined += 1;
                if examined.is_multiple_of(DEADLINE_POLL) {
                    if stop.load(AtomicOrdering::Relaxed) {
                        break;
                    }
                    if deadline.is_some_and(|d| Instant::now() > d) {
                        stop.store(true, AtomicOrdering::Relaxed);
                        break;
                    }
                }
            }
            Ok((sets, examined))
        })
        .collect();

    let mut total = 0u64;
    let mut merged: Vec<BestSet<TreeCode>> =
        objectives.iter().map(|&(_, d)| BestSet::new(d)).collect();
    for result in results {
        let (sets, examined) = result.map_err(|(e, _)| e)?;
        total += examined;
        merged = merged
            .into_iter()
            .zip(sets)
            .map(|(a, b)| a.merge(b))
            .collect();
    }
    if stop.load(AtomicOrdering::Relaxed) {
        return Err(SearchError::BudgetExceeded {
            n,
            examined: total,
            partial: Vec::new(),
        });
    }
    let elapsed = start.elapsed();
    Ok(merged
        .into_iter()
        .zip(objectives)
        .map(|(set, &(objective, direction))| {
            let (value, attaining) = set.finish().expect("every order has at least one tree");
            SearchRecord {
                n,
                objective,
                direction,
                value,
                attaining,
                examined: total,
                scope: Scope::AllTrees,
                skipped: 0,
                elapsed,
            }
        })
        .collect())
}

/// Exact extremum over all free trees on `n` vertices, with every tie.
pub fn extremal_trees(
    n: usize,
    objective: IndexKind,
    direction: Direction,
    budget: Budget,
) -> Result<SearchRecord<TreeCode>, SearchError> {
    if n < 2 {
        return Err(SearchError::InvalidOrder(n));
    }
    let mut records = scan_trees(n, &[(objective, direction)], budget)?;
    Ok(records.remove(0))
}

/// Where general graphs come from.
pub enum GraphSource<'a> {
    /// All connected graphs on `n` vertices from the built-in enumerator.
    BuiltIn(usize),
    /// Pre-decoded graphs, e.g. from a file read earlier.
    Graphs(Vec<Graph>),
    /// graph6 lines, decoded lazily.
    Lines(Box<dyn Iterator<Item = std::io::Result<String>> + 'a>),
}

impl<'a> GraphSource<'a> {
    pub fn lines<I, S>(lines: I) -> GraphSource<'a>
    where
        I: IntoIterator<Item = S>,
        I::IntoIter: 'a,
        S: Into<String>,
    {
        GraphSource::Lines(Box::new(lines.into_iter().map(|s| Ok(s.into()))))
    }
}

/// Exact extremum over a graph source. Disconnected records are rejected or
/// skipped per `policy`, as are unparseable graph6 lines.
type NumberedGraphs<'a> = Box<dyn Iterator<Item = Result<(usize, Graph), SearchError>> + 'a>;

pub fn extremal_graphs(
    source: GraphSource<'_>,
    objective: IndexKind,
    direction: Direction,
    policy: ErrorPolicy,
) -> Result<SearchRecord<CanonicalLabel>, SearchError> {
    let start = Instant::now();
    let (scope, graphs): (Scope, NumberedGraphs<'_>) = match source {
        GraphSource::BuiltIn(n) => {
            let graphs = enumerate_connected_graphs(n)?;
            (
                Scope::BuiltinExhaustive,
                Box::new(graphs.into_iter().enumerate().map(|(i, g)| Ok((i + 1, g)))),
            )
        }
        GraphSource::Graphs(graphs) => (
            Scope::ExternalStream,
            Box::new(graphs.into_iter().enumerate().map(|(i, g)| Ok((i + 1, g)))),
        ),
        GraphSource::Lines(lines) => (
            Scope::ExternalStream,
            Box::new(read_graph6_stream(lines, policy).map(|r| r.map_err(SearchError::from))),
        ),
    };

    let mut set = BestSet::new(direction);
    let mut order = None;
    let mut examined = 0u64;
    let mut skipped = 0u64;
    for item in graphs {
        let (index, g) = item?;
        let expected = *order.get_or_insert(g.order());
        if g.order() != expected {
            return Err(SearchError::MixedOrders {
                index,
                expected,
                found: g.order(),
            });
        }
        if !is_connected(&g) {
            match policy {
                ErrorPolicy::Abort => return Err(SearchError::Disconnected { index }),
                ErrorPolicy::Skip => {
                    skipped += 1;
                    continue;
                }
            }
        }
        let value = compute(&g, objective)?;
        let label = canonical_form(&g)?;
        set.offer(value, || label);
        examined += 1;
    }
    let (value, attaining) = set.finish().ok_or(SearchError::EmptySource)?;
    Ok(SearchRecord {
        n: order.unwrap_or(0),
        objective,
        direction,
        value,
        attaining,
        examined,
        scope,
        skipped,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConjectureId {
    /// The maximum over connected graphs is the balanced complete bipartite graph.
    #[serde(rename = "maxG")]
    MaxG,
    /// The minimum over connected graphs is attained by a tree.
    #[serde(rename = "minG")]
    MinG,
}

fn serialize_witness<S: Serializer>(g: &Option<Graph>, s: S) -> Result<S::Ok, S::Error> {
    match g {
        Some(g) => s.serialize_some(&write_graph6(g)),
        None => s.serialize_none(),
    }
}

fn serialize_graphs<S: Serializer>(gs: &[Graph], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(write_graph6))
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureVerdict {
    pub conjecture: ConjectureId,
    pub n: usize,
    /// Some extremal graph is of the conjectured kind.
    pub holds: bool,
    /// Every extremal graph is of the conjectured kind.
    pub exclusive: bool,
    /// Present exactly when `holds` is false; written as graph6.
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Graph>,
    /// Extremal graphs not of the conjectured kind, when `holds` is true.
    #[serde(serialize_with = "serialize_graphs")]
    pub ties: Vec<Graph>,
    pub scope: Scope,
    pub extremal_value: IndexValue,
    pub examined: u64,
}

fn verdict(
    conjecture: ConjectureId,
    record: SearchRecord<CanonicalLabel>,
    conforms: impl Fn(&CanonicalLabel) -> bool,
) -> ConjectureVerdict {
    let (good, bad): (Vec<_>, Vec<_>) = record.attaining.iter().partition(|&l| conforms(l));
    let bad: Vec<Graph> = bad.into_iter().map(CanonicalLabel::to_graph).collect();
    let holds = !good.is_empty();
    ConjectureVerdict {
        conjecture,
        n: record.n,
        holds,
        exclusive: bad.is_empty(),
        witness: if holds { None } else { bad.first().cloned() },
        ties: if holds { bad } else { Vec::new() },
        scope: record.scope,
        extremal_value: record.value,
        examined: record.examined,
    }
}

/// The wSz minimum over the source is attained by a tree.
pub fn verify_conjecture_min(
    source: GraphSource<'_>,
    policy: ErrorPolicy,
) -> Result<ConjectureVerdict, SearchError> {
    let record = extremal_graphs(source, IndexKind::Wsz, Direction::Min, policy)?;
    Ok(verdict(ConjectureId::MinG, record, |l| {
        classify(&l.to_graph()).is_tree
    }))
}

pub fn balanced_bipartite(n: usize) -> Graph {
    Graph::complete_bipartite(n / 2, n.div_ceil(2))
}

/// The wSz maximum over the source is attained by `K_{⌊n/2⌋,⌈n/2⌉}`.
pub fn verify_conjecture_max(
    source: GraphSource<'_>,
    policy: ErrorPolicy,
) -> Result<ConjectureVerdict, SearchError> {
    let record = extremal_graphs(source, IndexKind::Wsz, Direction::Max, policy)?;
    let target = canonical_form(&balanced_bipartite(record.n))?;
    Ok(verdict(ConjectureId::MaxG, record, |&l| l == target))
}

/// Result of the bipartite maximum check at one order.
#[derive(Debug, Clone, Serialize)]
pub struct BipartiteCheck {
    pub n: usize,
    pub bound: IndexValue,
    pub bipartite_graphs: u64,
    pub maximum: IndexValue,
    pub unique_maximizer_is_balanced: bool,
    pub bound_respected: bool,
}

/// Scans every connected bipartite graph from the built-in enumerator.
pub fn check_bipartite_maximum(n: usize) -> Result<BipartiteCheck, SearchError> {
    let bound = balanced_bipartite_wsz_closed_form(n as u64);
    let target = canonical_form(&balanced_bipartite(n))?;
    let graphs: Vec<Graph> = enumerate_connected_graphs(n)?
        .into_iter()
        .filter(|g| classify(g).is_bipartite())
        .collect();
    let count = graphs.len() as u64;
    let mut bound_respected = true;
    for g in &graphs {
        let v = compute(g, IndexKind::Wsz)?;
        bound_respected &= v.cmp_tol(&bound).is_le();
    }
    let record = extremal_graphs(
        GraphSource::Graphs(graphs),
        IndexKind::Wsz,
        Direction::Max,
        ErrorPolicy::Abort,
    )?;
    Ok(BipartiteCheck {
        n,
        bound,
        bipartite_graphs: count,
        maximum: record.value,
        unique_maximizer_is_balanced: record.attaining == vec![target] && record.value == bound,
        bound_respected,
    })
}

/// One minimal tree with everything needed to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct TreeEntry {
    pub code: TreeCode,
    pub graph6: String,
    pub edges: Vec<(usize, usize)>,
    /// Non-increasing.
    pub degree_sequence: Vec<usize>,
    pub abc: IndexValue,
    pub abc_minimal: bool,
    pub propositions: PropositionReport,
}

impl TreeEntry {
    fn new(code: &TreeCode, abc_min: &[TreeCode]) -> Result<TreeEntry, SearchError> {
        let g = decode(code);
        let mut degree_sequence = g.degrees().to_vec();
        degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TreeEntry {
            code: code.clone(),
            graph6: write_graph6(&g),
            edges: g.edges().to_vec(),
            degree_sequence,
            abc: compute(&g, IndexKind::Abc)?,
            abc_minimal: abc_min.contains(code),
            propositions: check_all_propositions(&g)?,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub wsz_min: IndexValue,
    pub trees: Vec<TreeEntry>,
    pub abc_min: IndexValue,
    /// Some wSz-minimal tree is also ABC-minimal.
    pub abc_coincident: bool,
    pub propositions_clean: bool,
    pub examined: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Minimal-tree table rows for every order in `orders`.
pub fn regenerate_table(
    orders: std::ops::RangeInclusive<usize>,
    budget: Budget,
) -> Result<Vec<TableRow>, SearchError> {
    let start = Instant::now();
    let mut rows = Vec::new();
    for n in orders {
        let remaining = budget
            .time_cap
            .map(|cap| cap.saturating_sub(start.elapsed()));
        let step = Budget {
            shards: budget.shards,
            time_cap: remaining,
        };
        let report = match coincidence_report_with(n, step) {
            Ok(r) => r,
            Err(SearchError::BudgetExceeded { n, examined, .. }) => {
                return Err(SearchError::BudgetExceeded {
                    n,
                    examined,
                    partial: rows,
                })
            }
            Err(e) => return Err(e),
        };
        let trees = report
            .wsz_min
            .attaining
            .iter()
            .map(|c| TreeEntry::new(c, &report.abc_min.attaining))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(TableRow {
            n,
            wsz_min: report.wsz_min.value,
            propositions_clean: trees.iter().all(|t| t.propositions.is_clean()),
            abc_coincident: !report.intersection.is_empty(),
            trees,
            abc_min: report.abc_min.value,
            examined: report.wsz_min.examined,
            elapsed: report.wsz_min.elapsed,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceReport {
    pub n: usize,
    pub wsz_min: SearchRecord<TreeCode>,
    pub abc_min: SearchRecord<TreeCode>,
    pub intersection: Vec<TreeCode>,
}

/// wSz-minimal and ABC-minimal trees from a single scan, and their overlap.
pub fn coincidence_report(n: usize, budget: Budget) -> Result<CoincidenceReport, SearchError> {
    if n < 4 {
        return Err(SearchError::InvalidOrder(n));
    }
    coincidence_report_with(n, budget)
}

fn coincidence_report_with(n: usize, budget: Budget) -> Result<CoincidenceReport, SearchError> {
    let mut records = scan_trees(
        n,
        &[
            (IndexKind::Wsz, Direction::Min),
            (IndexKind::Abc, Direction::Min),
        ],
        budget,
    )?;
    let abc_min = records.pop().expect("two objectives");
    let wsz_min = records.pop().expect("two objectives");
    let intersection = wsz_min
        .attaining
        .iter()
        .filter(|c| abc_min.attaining.binary_search(c).is_ok())
        .cloned()
        .collect();
    Ok(CoincidenceReport {
        n,
        wsz_min,
        abc_min,
        intersection,
    })
}

/// Propositions report for every member of a wSz-minimal set.
pub fn minimal_tree_propositions(
    record: &SearchRecord<TreeCode>,
) -> Result<Vec<(TreeCode, PropositionReport)>, SearchError> {
    record
        .attaining
        .iter()
        .map(|c| Ok((c.clone(), check_all_propositions(&decode(c))?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn code_of(g: &Graph) -> TreeCode {
        TreeCode::of_tree(g).unwrap()
    }

    #[test]
    fn n5_extremes() {
        let max = extremal_trees(5, IndexKind::Wsz, Direction::Max, Budget::default()).unwrap();
        assert_eq!(max.value, IndexValue::WSzeged(80));
        assert_eq!(max.attaining, vec![code_of(&Graph::star(5))]);
        assert_eq!(max.examined, 3);

        let min = extremal_trees(5, IndexKind::Wsz, Direction::Min, Budget::default()).unwrap();
        assert_eq!(min.value, IndexValue::WSzeged(72));
        assert_eq!(min.attaining, vec![code_of(&Graph::path(5))]);
    }

    #[test]
    fn ties_are_all_reported() {
        let mut set = BestSet::new(Direction::Min);
        set.offer(IndexValue::WSzeged(5), || 3u32);
        set.offer(IndexValue::WSzeged(4), || 2);
        set.offer(IndexValue::WSzeged(4), || 1);
        set.offer(IndexValue::WSzeged(6), || 0);
        assert_eq!(set.finish(), Some((IndexValue::WSzeged(4), vec![1, 2])));

        let mut set = BestSet::new(Direction::Min);
        set.offer(IndexValue::Abc(1.0 + 5e-10), || 1u32);
        set.offer(IndexValue::Abc(1.0), || 2);
        set.offer(IndexValue::Abc(1.0 + 2e-9), || 3);
        let (value, codes) = set.finish().unwrap();
        assert_eq!(value, IndexValue::Abc(1.0));
        assert_eq!(codes, vec![1, 2]);
    }

    #[test]
    fn szeged_max_over_small_stream() {
        // K3, and P3 in two labelings
        let rec = extremal_graphs(
            GraphSource::lines(["Bw", "Bo", "Bg"]),
            IndexKind::Szeged,
            Direction::Max,
            ErrorPolicy::Abort,
        )
        .unwrap();
        assert_eq!(rec.value, IndexValue::Szeged(4));
        assert_eq!(
            rec.attaining,
            vec![canonical_form(&Graph::path(3)).unwrap()]
        );
        assert_eq!(rec.examined, 3);
    }

    #[test]
    fn builtin_graph_examples() {
        let max = extremal_graphs(
            GraphSource::BuiltIn(4),
            IndexKind::Wsz,
            Direction::Max,
            ErrorPolicy::Abort,
        )
        .unwrap();
        assert_eq!(max.value, IndexValue::WSzeged(64));
        assert_eq!(
            max.attaining,
            vec![canonical_form(&Graph::cycle(4)).unwrap()]
        );
        assert_eq!(max.examined, 6);

        let min = extremal_graphs(
            GraphSource::BuiltIn(4),
            IndexKind::Wsz,
            Direction::Min,
            ErrorPolicy::Abort,
        )
        .unwrap();
        assert_eq!(min.value, IndexValue::WSzeged(34));
        assert_eq!(
            min.attaining,
            vec![canonical_form(&Graph::path(4)).unwrap()]
        );

        let k2 = extremal_graphs(
            GraphSource::BuiltIn(2),
            IndexKind::Wsz,
            Direction::Max,
            ErrorPolicy::Abort,
        )
        .unwrap();
        assert_eq!(k2.value, IndexValue::WSzeged(2));
    }

    #[test]
    fn stream_policies() {
        let disconnected = write_graph6(&Graph::new(4, &[(0, 1), (2, 3)]).unwrap());
        let err = extremal_graphs(
            GraphSource::lines(vec!["C~".to_string(), disconnected.clone()]),
            IndexKind::Wsz,
            Direction::Max,
            ErrorPolicy::Abort,
        )
        .unwrap_err();
        assert!(matches!(err, SearchError::Disconnected { index: 2 }));

        let rec = extremal_graphs(
            GraphSource::lines(vec!["C~".to_string(), disconnected, "junk".into()]),
            IndexKind::Wsz,
            Direction::Max,
            ErrorPolicy::Skip,
        )
        .unwrap();
        assert_eq!((rec.examined, rec.skipped), (1, 1));

        let err = extremal_graphs(
            GraphSource::lines(["A_", "C~"]),
            IndexKind::Wsz,
            Direction::Max,
            ErrorPolicy::Abort,
        )
        .unwrap_err();
        assert!(matches!(err, SearchError::MixedOrders { index: 2, .. }));

        let err = extremal_graphs(
            GraphSource::lines(Vec::<String>::new()),
            IndexKind::Wsz,
            Direction::Max,
            ErrorPolicy::Abort,
        )
        .unwrap_err();
        assert!(matches!(err, SearchError::EmptySource));
    }

    #[test]
    fn conjecture_examples() {
        let v = verify_conjecture_min(GraphSource::BuiltIn(4), ErrorPolicy::Abort).unwrap();
        assert!(v.holds && v.witness.is_none());

        let c5 = write_graph6(&Graph::cycle(5));
        let v = verify_conjecture_min(GraphSource::lines([c5]), ErrorPolicy::Abort).unwrap();
        assert!(!v.holds);
        assert_eq!(v.scope, Scope::ExternalStream);
        assert!(is_isomorphic(v.witness.as_ref().unwrap(), &Graph::cycle(5)));

        let v = verify_conjecture_max(GraphSource::BuiltIn(4), ErrorPolicy::Abort).unwrap();
        assert!(v.holds);
        assert_eq!(v.extremal_value, IndexValue::WSzeged(64));

        let v = verify_conjecture_max(GraphSource::BuiltIn(2), ErrorPolicy::Abort).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn triangle_ties_the_path_at_three() {
        // K3 and P3 = K_{1,2} both have wSz 12
        for v in [
            verify_conjecture_min(GraphSource::BuiltIn(3), ErrorPolicy::Abort).unwrap(),
            verify_conjecture_max(GraphSource::BuiltIn(3), ErrorPolicy::Abort).unwrap(),
        ] {
            assert_eq!(v.extremal_value, IndexValue::WSzeged(12));
            assert!(v.holds && !v.exclusive && v.witness.is_none());
            assert_eq!(v.ties.len(), 1);
            assert!(is_isomorphic(&v.ties[0], &Graph::complete(3)));
        }
        for n in 4..=7 {
            let v = verify_conjecture_max(GraphSource::BuiltIn(n), ErrorPolicy::Abort).unwrap();
            assert!(v.exclusive, "n = {n}");
            let v = verify_conjecture_min(GraphSource::BuiltIn(n), ErrorPolicy::Abort).unwrap();
            assert!(v.exclusive, "n = {n}");
        }
    }

    fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
        crate::graph6::is_isomorphic(a, b).unwrap()
    }

    #[test]
    fn n5_max_over_connected_graphs() {
        let v = verify_conjecture_max(GraphSource::BuiltIn(5), ErrorPolicy::Abort).unwrap();
        let k23 = compute(&balanced_bipartite(5), IndexKind::Wsz).unwrap();
        assert_eq!(k23, IndexValue::WSzeged(180));
        if v.holds {
            assert_eq!(v.extremal_value, k23);
        }
    }

    #[test]
    fn coincidence_small() {
        let r = coincidence_report(5, Budget::default()).unwrap();
        assert_eq!(r.wsz_min.attaining.len(), 1);
        assert!(!r.abc_min.attaining.is_empty());
        assert!(coincidence_report(3, Budget::default()).is_err());
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let budget = Budget {
            shards: 2,
            time_cap: Some(Duration::ZERO),
        };
        match regenerate_table(7..=14, budget) {
            Err(SearchError::BudgetExceeded { n, partial, .. }) => {
                assert!(n >= 7);
                assert!(partial.iter().all(|r| r.n < n));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_orders() {
        assert!(matches!(
            extremal_trees(1, IndexKind::Wsz, Direction::Max, Budget::default()),
            Err(SearchError::InvalidOrder(1))
        ));
        assert!(matches!(
            extremal_trees(26, IndexKind::Wsz, Direction::Max, Budget::default()),
            Err(SearchError::InvalidOrder(26))
        ));
    }
}
