//! Wiener, Szeged, weighted Szeged and atom-bond connectivity indices.
//!
//! The three distance-based integer indices are exact and use checked `u64`
//! arithmetic. Szeged and weighted Szeged share one code path parameterized
//! by an edge weight: `w ≡ 1` gives Szeged, `w(u, v) = deg u + deg v` gives
//! the weighted variant.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{
    all_edge_splits_bfs, bfs_distances, is_tree, tree_edge_splits, Graph, GraphError,
};

/// Two ABC values closer than this are treated as equal.
pub const ABC_TOLERANCE: f64 = 1e-9;

#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum IndexKind {
    Wiener,
    Szeged,
    Wsz,
    Abc,
}

impl IndexKind {
    pub fn is_exact(self) -> bool {
        !matches!(self, IndexKind::Abc)
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Wiener => "wiener",
            IndexKind::Szeged => "szeged",
            IndexKind::Wsz => "wsz",
            IndexKind::Abc => "abc",
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A computed index: exact integer for the distance-based kinds, `f64` for ABC.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexValue {
    Wiener(u64),
    Szeged(u64),
    WSzeged(u64),
    Abc(f64),
}

impl IndexValue {
    pub fn kind(&self) -> IndexKind {
        match self {
            IndexValue::Wiener(_) => IndexKind::Wiener,
            IndexValue::Szeged(_) => IndexKind::Szeged,
            IndexValue::WSzeged(_) => IndexKind::Wsz,
            IndexValue::Abc(_) => IndexKind::Abc,
        }
    }

    pub fn as_int(&self) -> Option<u64> {
        match *self {
            IndexValue::Wiener(x) | IndexValue::Szeged(x) | IndexValue::WSzeged(x) => Some(x),
            IndexValue::Abc(_) => None,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            IndexValue::Wiener(x) | IndexValue::Szeged(x) | IndexValue::WSzeged(x) => x as f64,
            IndexValue::Abc(x) => x,
        }
    }

    fn from_kind_int(kind: IndexKind, x: u64) -> IndexValue {
        match kind {
            IndexKind::Wiener => IndexValue::Wiener(x),
            IndexKind::Szeged => IndexValue::Szeged(x),
            IndexKind::Wsz => IndexValue::WSzeged(x),
            IndexKind::Abc => IndexValue::Abc(x as f64),
        }
    }

    /// Total order within one kind. Integer kinds compare exactly; ABC values
    /// within [`ABC_TOLERANCE`] compare equal.
    pub fn cmp_tol(&self, other: &IndexValue) -> Ordering {
        match (self.as_int(), other.as_int()) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => {
                let (a, b) = (self.as_f64(), other.as_f64());
                if (a - b).abs() < ABC_TOLERANCE {
                    Ordering::Equal
                } else {
                    a.total_cmp(&b)
                }
            }
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_int() {
            Some(x) => write!(f, "{x}"),
            None => write!(f, "{:.12}", self.as_f64()),
        }
    }
}

impl Serialize for IndexValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_int() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_f64(self.as_f64()),
        }
    }
}

fn splits(g: &Graph) -> Result<Vec<crate::graph::EdgeSplit>, GraphError> {
    if is_tree(g) {
        tree_edge_splits(g)
    } else {
        all_edge_splits_bfs(g)
    }
}

/// `Σ w(u, v) · n_u · n_v` over all edges, in checked arithmetic.
pub fn edge_weighted_szeged<W>(g: &Graph, weight: W) -> Result<u64, GraphError>
where
    W: Fn(&Graph, usize, usize) -> u64,
{
    splits(g)?.iter().try_fold(0u64, |acc, s| {
        weight(g, s.u, s.v)
            .checked_mul(s.n_u)
            .and_then(|x| x.checked_mul(s.n_v))
            .and_then(|x| acc.checked_add(x))
            .ok_or(GraphError::Overflow)
    })
}

pub fn degree_sum_weight(g: &Graph, u: usize, v: usize) -> u64 {
    (g.degree(u) + g.degree(v)) as u64
}

/// Sum of distances over unordered vertex pairs.
pub fn wiener(g: &Graph) -> Result<IndexValue, GraphError> {
    if is_tree(g) {
        return edge_weighted_szeged(g, |_, _, _| 1).map(IndexValue::Wiener);
    }
    let mut total = 0u64;
    for s in 0..g.order() {
        let row = bfs_distances(g, s);
        for t in s + 1..g.order() {
            let d = row.get(t).ok_or(GraphError::Disconnected)?;
            total = total.checked_add(d as u64).ok_or(GraphError::Overflow)?;
        }
    }
    Ok(IndexValue::Wiener(total))
}

pub fn szeged(g: &Graph) -> Result<IndexValue, GraphError> {
    edge_weighted_szeged(g, |_, _, _| 1).map(IndexValue::Szeged)
}

pub fn weighted_szeged(g: &Graph) -> Result<IndexValue, GraphError> {
    edge_weighted_szeged(g, degree_sum_weight).map(IndexValue::WSzeged)
}

fn abc_term(du: usize, dv: usize) -> f64 {
    let (du, dv) = (du as f64, dv as f64);
    ((du + dv - 2.0) / (du * dv)).sqrt()
}

/// `Σ sqrt((deg u + deg v − 2) / (deg u · deg v))`, summed in sorted edge order.
pub fn abc(g: &Graph) -> Result<IndexValue, GraphError> {
    if !crate::graph::is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    let total = g
        .edges()
        .iter()
        .map(|&(u, v)| abc_term(g.degree(u), g.degree(v)))
        .sum();
    Ok(IndexValue::Abc(total))
}

pub fn compute(g: &Graph, kind: IndexKind) -> Result<IndexValue, GraphError> {
    match kind {
        IndexKind::Wiener => wiener(g),
        IndexKind::Szeged => szeged(g),
        IndexKind::Wsz => weighted_szeged(g),
        IndexKind::Abc => abc(g),
    }
}

/// `wSz(S_n) = n (n − 1)²`.
pub fn star_wsz_closed_form(n: u64) -> IndexValue {
    IndexValue::WSzeged(n * (n - 1) * (n - 1))
}

/// `wSz(K_{⌊n/2⌋,⌈n/2⌉}) = n · ⌊n²/4⌋²`.
pub fn balanced_bipartite_wsz_closed_form(n: u64) -> IndexValue {
    let q = n * n / 4;
    IndexValue::WSzeged(n * q * q)
}

/// Reusable buffers for scoring trees given as level sequences without
/// building a [`Graph`]. One pass computes subtree sizes and degrees.
#[derive(Debug, Default)]
pub struct LevelScorer {
    parent: Vec<usize>,
    subtree: Vec<u64>,
    degree: Vec<u32>,
    stack: Vec<usize>,
}

impl LevelScorer {
    pub fn new() -> LevelScorer {
        LevelScorer::default()
    }

    fn prepare(&mut self, levels: &[u8]) {
        let n = levels.len();
        self.parent.clear();
        self.parent.resize(n, usize::MAX);
        self.subtree.clear();
        self.subtree.resize(n, 1);
        self.degree.clear();
        self.degree.resize(n, 0);
        self.stack.clear();
        // stack[d] = most recent vertex at depth d
        for (i, &l) in levels.iter().enumerate() {
            let l = l as usize;
            self.stack.truncate(l);
            if let Some(&p) = self.stack.last() {
                self.parent[i] = p;
                self.degree[p] += 1;
                self.degree[i] += 1;
            }
            self.stack.push(i);
        }
        for i in (1..n).rev() {
            let p = self.parent[i];
            self.subtree[p] += self.subtree[i];
        }
    }

    /// Scores a valid level sequence (see [`crate::treegen::TreeCode`]).
    pub fn score(&mut self, levels: &[u8], kind: IndexKind) -> Result<IndexValue, GraphError> {
        self.prepare(levels);
        let n = levels.len() as u64;
        if kind == IndexKind::Abc {
            // sorted edge order (parent < child) keeps summation order fixed
            let mut total = 0.0;
            for i in 1..levels.len() {
                let p = self.parent[i];
                total += abc_term(self.degree[p] as usize, self.degree[i] as usize);
            }
            return Ok(IndexValue::Abc(total));
        }
        let mut total = 0u64;
        for i in 1..levels.len() {
            let p = self.parent[i];
            let s = self.subtree[i];
            let w = match kind {
                IndexKind::Wsz => (self.degree[p] + self.degree[i]) as u64,
                _ => 1,
            };
            let term = w
                .checked_mul(s)
                .and_then(|x| x.checked_mul(n - s))
                .ok_or(GraphError::Overflow)?;
            total = total.checked_add(term).ok_or(GraphError::Overflow)?;
        }
        Ok(IndexValue::from_kind_int(kind, total))
    }
}
