//! Free-tree enumeration by canonical level sequences.
//!
//! Trees are generated rooted at their center, in lexicographically
//! decreasing order of level sequence, each isomorphism class exactly once.
//! The successor rule walks rooted trees in the Beyer–Hedetniemi order and
//! jumps over rootings that are not the canonical center rooting
//! (Wright–Richmond–Odlyzko–McKay).

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{is_tree, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeCodeError {
    #[error("malformed level sequence: {0}")]
    MalformedLevelSequence(String),
    #[error("graph is not a tree")]
    NotATree,
}

/// Level sequence of a rooted tree in preorder, root at depth 0.
///
/// Codes emitted by [`enumerate_trees`] or built by [`TreeCode::of_tree`] are
/// canonical: two such codes are equal iff their trees are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeCode(Vec<u8>);

impl TreeCode {
    /// Validates the level-sequence shape; does not check canonicity.
    pub fn new(levels: Vec<u8>) -> Result<TreeCode, TreeCodeError> {
        let malformed = |msg: &str| Err(TreeCodeError::MalformedLevelSequence(msg.to_string()));
        match levels.first() {
            None => return malformed("empty sequence"),
            Some(&l) if l != 0 => return malformed("first entry must be 0"),
            _ => {}
        }
        for w in levels.windows(2) {
            if w[1] == 0 || w[1] > w[0] + 1 {
                return malformed(&format!(
                    "entry {} after {} is not in 1..={}",
                    w[1],
                    w[0],
                    w[0] + 1
                ));
            }
        }
        Ok(TreeCode(levels))
    }

    pub fn levels(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Canonical code of an arbitrary tree: the valid center rooting.
    pub fn of_tree(t: &Graph) -> Result<TreeCode, TreeCodeError> {
        if !is_tree(t) {
            return Err(TreeCodeError::NotATree);
        }
        if t.order() <= 2 {
            return Ok(TreeCode((0..t.order() as u8).collect()));
        }
        centers(t)
            .into_iter()
            .map(|c| rooted_canonical(t, c, usize::MAX))
            .filter(|levels| is_center_rooting(levels))
            .max()
            .map(TreeCode)
            .ok_or_else(|| TreeCodeError::MalformedLevelSequence("no valid center rooting".into()))
    }
}

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeCode[{self}]")
    }
}

impl FromStr for TreeCode {
    type Err = TreeCodeError;

    fn from_str(s: &str) -> Result<TreeCode, TreeCodeError> {
        let levels = s
            .trim()
            .split(',')
            .map(|x| x.trim().parse::<u8>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| TreeCodeError::MalformedLevelSequence(e.to_string()))?;
        TreeCode::new(levels)
    }
}

impl Serialize for TreeCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Tree where vertex `i` hangs from the nearest earlier vertex one level up.
pub fn decode(code: &TreeCode) -> Graph {
    let levels = code.levels();
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for (i, &l) in levels.iter().enumerate() {
        stack.truncate(l as usize);
        if let Some(&p) = stack.last() {
            edges.push((p, i));
        }
        stack.push(i);
    }
    Graph::new(levels.len(), &edges).expect("level sequences decode to simple trees")
}

/// Parses and decodes a raw level sequence.
pub fn decode_levels(levels: &[u8]) -> Result<Graph, TreeCodeError> {
    TreeCode::new(levels.to_vec()).map(|c| decode(&c))
}

fn centers(t: &Graph) -> Vec<usize> {
    let n = t.order();
    let mut degree: Vec<usize> = t.degrees().to_vec();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in t.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Lexicographically maximal level sequence of the subtree at `root`.
fn rooted_canonical(t: &Graph, root: usize, parent: usize) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = t
        .neighbors(root)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_canonical(t, w, root))
        .collect();
    children.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![0u8];
    for child in children {
        out.extend(child.into_iter().map(|l| l + 1));
    }
    out
}

/// Position of the second depth-1 entry, i.e. the end of the first subtree.
fn first_subtree_end(levels: &[u8]) -> usize {
    levels[2..]
        .iter()
        .position(|&l| l == 1)
        .map_or(levels.len(), |i| i + 2)
}

/// Whether a canonical rooted sequence is the representative rooting of its
/// free tree: the first subtree is not taller than the rest, and ties are
/// broken by size then lexicographic order.
fn is_center_rooting(levels: &[u8]) -> bool {
    let m = first_subtree_end(levels);
    let left = &levels[1..m];
    let rest = &levels[m..];
    let left_height = left.iter().max().map_or(0, |&h| h - 1);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    if rest_height != left_height {
        return rest_height > left_height;
    }
    let (left_len, rest_len) = (left.len(), rest.len() + 1);
    if left_len != rest_len {
        return left_len < rest_len;
    }
    // left shifted up one level vs [0] ++ rest
    let shifted = left.iter().map(|&l| l - 1);
    let rest_seq = std::iter::once(0u8).chain(rest.iter().copied());
    shifted.cmp(rest_seq) != std::cmp::Ordering::Greater
}

/// Pull-based stream of all free trees on `n` vertices.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    levels: Vec<u8>,
    state: StreamState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    Done,
}

impl FreeTrees {
    pub fn new(n: usize) -> FreeTrees {
        assert!((1..=255).contains(&n), "tree order must be in 1..=255");
        // path rooted at its center
        let levels: Vec<u8> = (0..=n / 2)
            .chain(1..n.div_ceil(2))
            .map(|l| l as u8)
            .collect();
        FreeTrees {
            levels,
            state: StreamState::Fresh,
        }
    }

    /// Advances to the next code without materializing it; returns the
    /// current level sequence.
    pub fn advance(&mut self) -> Option<&[u8]> {
        match self.state {
            StreamState::Done => return None,
            StreamState::Fresh => self.state = StreamState::Running,
            StreamState::Running => {
                if !next_rooted_tree(&mut self.levels, None) {
                    self.state = StreamState::Done;
                    return None;
                }
            }
        }
        if self.levels.len() > 2 {
            self.skip_to_valid();
        }
        Some(&self.levels)
    }

    fn skip_to_valid(&mut self) {
        if is_center_rooting(&self.levels) {
            return;
        }
        let p = first_subtree_end(&self.levels) - 1;
        let old = self.levels[p];
        next_rooted_tree(&mut self.levels, Some(p));
        if old > 2 {
            let m = first_subtree_end(&self.levels);
            let height = self.levels[1..m].iter().max().map_or(0, |&h| h - 1) as usize;
            let n = self.levels.len();
            for (k, slot) in self.levels[n - height - 1..].iter_mut().enumerate() {
                *slot = (k + 1) as u8;
            }
        }
    }
}

impl Iterator for FreeTrees {
    type Item = TreeCode;

    fn next(&mut self) -> Option<TreeCode> {
        self.advance().map(|l| TreeCode(l.to_vec()))
    }
}

/// Beyer–Hedetniemi successor, in place. Returns `false` after the last tree.
fn next_rooted_tree(levels: &mut [u8], p: Option<usize>) -> bool {
    let p = p.unwrap_or_else(|| {
        let mut p = levels.len() - 1;
        while levels[p] == 1 {
            p -= 1;
        }
        p
    });
    if p == 0 {
        return false;
    }
    let mut q = p - 1;
    while levels[q] != levels[p] - 1 {
        q -= 1;
    }
    for i in p..levels.len() {
        levels[i] = levels[i - p + q];
    }
    true
}

pub fn enumerate_trees(n: usize) -> FreeTrees {
    FreeTrees::new(n)
}

/// Number of free trees on `n` vertices by Otter's counting formula.
pub fn free_tree_count(n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    let rooted = rooted_tree_counts(n);
    let mut pairs: u128 = (1..n).map(|k| rooted[k] * rooted[n - k]).sum();
    if n.is_multiple_of(2) {
        pairs -= rooted[n / 2];
    }
    rooted[n] - pairs / 2
}

/// Rooted unlabeled tree counts `r[0..=n]` via the Euler-transform recurrence.
fn rooted_tree_counts(n: usize) -> Vec<u128> {
    let mut r = vec![0u128; n + 1];
    if n >= 1 {
        r[1] = 1;
    }
    for m in 1..n {
        // (m) r[m+1] = Σ_{k=1..m} (Σ_{d|k} d r[d]) r[m−k+1]
        let mut acc = 0u128;
        for k in 1..=m {
            let s: u128 = (1..=k)
                .filter(|d| k % d == 0)
                .map(|d| d as u128 * r[d])
                .sum();
            acc += s * r[m - k + 1];
        }
        r[m + 1] = acc / m as u128;
    }
    r
}

/// One contiguous block of the canonical order.
#[derive(Debug, Clone)]
pub struct ShardStream {
    inner: FreeTrees,
    to_skip: u128,
    remaining: u128,
}

impl ShardStream {
    pub fn len(&self) -> u128 {
        self.remaining
    }

    pub fn is_empty(&self) -> bool {
        self.remaining == 0
    }

    pub fn advance(&mut self) -> Option<&[u8]> {
        while self.to_skip > 0 {
            self.inner.advance()?;
            self.to_skip -= 1;
        }
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        self.inner.advance()
    }
}

impl Iterator for ShardStream {
    type Item = TreeCode;

    fn next(&mut self) -> Option<TreeCode> {
        self.advance().map(|l| TreeCode(l.to_vec()))
    }
}

/// Splits the stream for `n` into `shards` disjoint contiguous blocks whose
/// concatenation is exactly [`enumerate_trees`]`(n)`.
pub fn partition_stream(n: usize, shards: usize) -> Vec<ShardStream> {
    assert!(shards >= 1, "need at least one shard");
    let total = free_tree_count(n);
    let s = shards as u128;
    (0..s)
        .map(|i| {
            let start = i * total / s;
            let end = (i + 1) * total / s;
            ShardStream {
                inner: FreeTrees::new(n),
                to_skip: start,
                remaining: end - start,
            }
        })
        .collect()
}

/// Writes one code per line as comma-separated depths.
pub fn dump_codes<W: Write>(
    out: &mut W,
    codes: impl IntoIterator<Item = TreeCode>,
) -> io::Result<()> {
    for code in codes {
        writeln!(out, "{code}")?;
    }
    Ok(())
}
