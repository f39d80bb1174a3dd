//! graph6 reading and writing, canonical labels for small graphs, and the
//! built-in enumeration of connected graphs up to isomorphism.
//!
//! Bit order follows the published format: upper triangle by columns,
//! `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), …`, packed six bits per byte
//! with an offset of 63.

use std::fmt;
use std::io::BufRead;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{is_connected, Graph};

/// Largest order handled by [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 10;
/// Largest order enumerated by [`enumerate_connected_graphs`].
pub const MAX_BUILTIN_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("bad graph6 header")]
    BadHeader,
    #[error("truncated edge bits: expected {expected} bytes, found {found}")]
    TruncatedBits { expected: usize, found: usize },
    #[error("unexpected trailing bytes after edge data")]
    TrailingBytes,
    #[error("invalid graph6 character {0:?}")]
    InvalidCharacter(char),
    #[error("order {order} exceeds supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
}

fn decode_byte(c: u8) -> Result<u64, Graph6Error> {
    if (63..=126).contains(&c) {
        Ok((c - 63) as u64)
    } else {
        Err(Graph6Error::InvalidCharacter(c as char))
    }
}

fn parse_order(bytes: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    let group = |chunk: &[u8]| -> Result<usize, Graph6Error> {
        chunk
            .iter()
            .try_fold(0usize, |acc, &c| Ok((acc << 6) | decode_byte(c)? as usize))
    };
    match bytes {
        [] => Err(Graph6Error::BadHeader),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Graph6Error::BadHeader);
            }
            Ok((group(&rest[..6])?, &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::BadHeader);
            }
            Ok((group(&rest[..3])?, &rest[3..]))
        }
        [c, rest @ ..] => Ok((decode_byte(*c)? as usize, rest)),
    }
}

/// Parses one graph6 record. An optional `>>graph6<<` prefix is accepted.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let (n, body) = parse_order(line.as_bytes())?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::TruncatedBits {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingBytes);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = decode_byte(body[k / 6])?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    for &c in body {
        decode_byte(c)?;
    }
    Ok(Graph::new(n, &edges).expect("upper-triangle bits give a simple graph"))
}

fn write_order(n: usize, out: &mut String) {
    let push6 = |out: &mut String, x: usize, groups: u32| {
        for g in (0..groups).rev() {
            out.push((((x >> (6 * g)) & 63) as u8 + 63) as char);
        }
    };
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        push6(out, n, 3);
    } else {
        out.push_str("~~");
        push6(out, n, 6);
    }
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    write_order(n, &mut out);
    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in g.edges() {
        let k = v * (v - 1) / 2 + u;
        packed[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(packed.into_iter().map(|b| (b + 63) as char));
    out
}

/// Canonical adjacency bitstring: the lexicographically smallest
/// upper-triangle bitstring over all relabelings that list vertices by
/// non-increasing degree. Bit `(0,1)` is the most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel {
    pub order: usize,
    pub bits: u64,
}

impl CanonicalLabel {
    /// The canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        from_bits(self.order, self.bits)
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({})", write_graph6(&self.to_graph()))
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(&self.to_graph()))
    }
}

impl Serialize for CanonicalLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Upper-triangle bitstring of `g` as labeled, MSB first.
pub fn adjacency_bits(g: &Graph) -> u64 {
    let m = pair_count(g.order());
    assert!(m <= 64, "bitstring needs at most 64 pairs");
    g.edges().iter().fold(0u64, |acc, &(u, v)| {
        acc | 1 << (m - 1 - (v * (v - 1) / 2 + u))
    })
}

fn from_bits(n: usize, bits: u64) -> Graph {
    let m = pair_count(n);
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if (bits >> (m - 1 - k)) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, &edges).expect("bitstrings give simple graphs")
}

struct CanonSearch {
    n: usize,
    adj: [u16; MAX_CANONICAL_ORDER],
    target_degree: Vec<usize>,
    degree: Vec<usize>,
    perm: Vec<usize>,
    used: u16,
    best: Vec<u16>,
}

impl CanonSearch {
    fn column(&self, j: usize, v: usize) -> u16 {
        let mut col = 0u16;
        for i in 0..j {
            col = (col << 1) | ((self.adj[self.perm[i]] >> v) & 1);
        }
        col
    }

    fn search(&mut self, j: usize) {
        if j == self.n {
            return;
        }
        for v in 0..self.n {
            if self.used & (1 << v) != 0 || self.degree[v] != self.target_degree[j] {
                continue;
            }
            let col = self.column(j, v);
            if col > self.best[j] {
                continue;
            }
            if col < self.best[j] {
                self.best[j] = col;
                for b in &mut self.best[j + 1..] {
                    *b = u16::MAX;
                }
            }
            self.perm.push(v);
            self.used |= 1 << v;
            self.search(j + 1);
            self.used &= !(1 << v);
            self.perm.pop();
        }
    }
}

/// Permutation-invariant label; exact for orders up to [`MAX_CANONICAL_ORDER`].
pub fn canonical_form(g: &Graph) -> Result<CanonicalLabel, Graph6Error> {
    let n = g.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Graph6Error::OrderTooLarge {
            order: n,
            max: MAX_CANONICAL_ORDER,
        });
    }
    let mut adj = [0u16; MAX_CANONICAL_ORDER];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let degree = g.degrees().to_vec();
    let mut target_degree = degree.clone();
    target_degree.sort_unstable_by(|a, b| b.cmp(a));
    let mut search = CanonSearch {
        n,
        adj,
        target_degree,
        degree,
        perm: Vec::with_capacity(n),
        used: 0,
        best: vec![u16::MAX; n],
    };
    search.search(0);
    let bits = (1..n).fold(0u64, |acc, j| (acc << j) | search.best[j] as u64);
    Ok(CanonicalLabel { order: n, bits })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, Graph6Error> {
    Ok(a.order() == b.order() && a.size() == b.size() && canonical_form(a)? == canonical_form(b)?)
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, each already in canonical labeling, in increasing bitstring order.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>, Graph6Error> {
    if n > MAX_BUILTIN_ORDER {
        return Err(Graph6Error::OrderTooLarge {
            order: n,
            max: MAX_BUILTIN_ORDER,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = pair_count(n);
    let mut out = Vec::new();
    let mut degree = vec![0usize; n];
    for bits in 0u64..(1u64 << m) {
        if (bits.count_ones() as usize) + 1 < n {
            continue;
        }
        degree.iter_mut().for_each(|d| *d = 0);
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if (bits >> (m - 1 - k)) & 1 == 1 {
                    degree[u] += 1;
                    degree[v] += 1;
                }
                k += 1;
            }
        }
        // canonical labelings list degrees in non-increasing order
        if degree.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let g = from_bits(n, bits);
        if !is_connected(&g) {
            continue;
        }
        if canonical_form(&g)?.bits == bits {
            out.push(g);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ErrorPolicy {
    /// Stop at the first bad record.
    #[default]
    Abort,
    /// Skip bad records and count them.
    Skip,
}

#[derive(Debug, Error)]
#[error("line {line}: {kind}")]
pub struct StreamError {
    /// 1-based line number.
    pub line: usize,
    pub kind: StreamErrorKind,
}

#[derive(Debug, Error)]
pub enum StreamErrorKind {
    #[error(transparent)]
    Parse(#[from] Graph6Error),
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
}

/// Lazy graph6 decoder over a line source. Blank lines are ignored.
pub struct Graph6Reader<I> {
    lines: I,
    line: usize,
    policy: ErrorPolicy,
    skipped: usize,
    failed: bool,
}

impl<I> Graph6Reader<I> {
    pub fn skipped(&self) -> usize {
        self.skipped
    }
}

impl<I, S> Iterator for Graph6Reader<I>
where
    I: Iterator<Item = std::io::Result<S>>,
    S: AsRef<str>,
{
    /// `(line number, graph)`.
    type Item = Result<(usize, Graph), StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            let item = self.lines.next()?;
            self.line += 1;
            let line = self.line;
            let kind = match item {
                Ok(text) => {
                    let text = text.as_ref().trim();
                    if text.is_empty() {
                        continue;
                    }
                    match parse_graph6(text) {
                        Ok(g) => return Some(Ok((line, g))),
                        Err(e) => StreamErrorKind::Parse(e),
                    }
                }
                Err(e) => StreamErrorKind::Io(e),
            };
            match self.policy {
                ErrorPolicy::Skip if matches!(kind, StreamErrorKind::Parse(_)) => {
                    self.skipped += 1;
                }
                _ => {
                    self.failed = true;
                    return Some(Err(StreamError { line, kind }));
                }
            }
        }
    }
}

/// Decodes a stream of graph6 lines.
pub fn read_graph6_stream<I, S>(lines: I, policy: ErrorPolicy) -> Graph6Reader<I::IntoIter>
where
    I: IntoIterator<Item = std::io::Result<S>>,
    S: AsRef<str>,
{
    Graph6Reader {
        lines: lines.into_iter(),
        line: 0,
        policy,
        skipped: 0,
        failed: false,
    }
}

/// Convenience wrapper over in-memory lines.
pub fn read_graph6_lines<'a>(
    lines: &'a [&'a str],
    policy: ErrorPolicy,
) -> Graph6Reader<impl Iterator<Item = std::io::Result<&'a str>>> {
    read_graph6_stream(lines.iter().map(|&l| Ok(l)), policy)
}

pub fn read_graph6_reader<R: BufRead>(
    reader: R,
    policy: ErrorPolicy,
) -> Graph6Reader<std::io::Lines<R>> {
    read_graph6_stream(reader.lines(), policy)
}
