#![allow(dead_code, clippy::needless_range_loop)]

//! Independent oracles: plain BFS distances, brute-force canonical forms and
//! AHU tree encodings. None of this calls into the library beyond `Graph`.

use std::collections::{BTreeSet, VecDeque};

use wszeged::Graph;

pub fn distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.order()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &y in g.neighbors(x) {
            if d[y] == usize::MAX {
                d[y] = d[x] + 1;
                q.push_back(y);
            }
        }
    }
    d
}

pub fn all_pairs(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|s| distances(g, s)).collect()
}

pub fn wiener(g: &Graph) -> u64 {
    let d = all_pairs(g);
    let n = g.order();
    let mut total = 0;
    for i in 0..n {
        for j in i + 1..n {
            total += d[i][j] as u64;
        }
    }
    total
}

/// `(n_u, n_v, eq)` for every edge, straight from the all-pairs table.
pub fn splits(g: &Graph) -> Vec<(usize, usize, u64, u64, u64)> {
    let d = all_pairs(g);
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let (mut a, mut b, mut e) = (0, 0, 0);
            for w in 0..g.order() {
                match d[u][w].cmp(&d[v][w]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => e += 1,
                }
            }
            (u, v, a, b, e)
        })
        .collect()
}

pub fn szeged(g: &Graph) -> u64 {
    splits(g).iter().map(|s| s.2 * s.3).sum()
}

pub fn wsz(g: &Graph) -> u64 {
    splits(g)
        .iter()
        .map(|&(u, v, a, b, _)| (g.degree(u) + g.degree(v)) as u64 * a * b)
        .sum()
}

pub fn abc(g: &Graph) -> f64 {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let (du, dv) = (g.degree(u) as f64, g.degree(v) as f64);
            ((du + dv - 2.0) / (du * dv)).sqrt()
        })
        .sum()
}

pub fn connected(g: &Graph) -> bool {
    g.order() == 0 || distances(g, 0).iter().all(|&d| d != usize::MAX)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Isomorphism-class key by trying every permutation: the minimal sorted
/// edge list. Only for n ≤ 7.
pub struct BruteCanon {
    perms: Vec<Vec<usize>>,
}

impl BruteCanon {
    pub fn new(n: usize) -> BruteCanon {
        assert!(n <= 7);
        BruteCanon {
            perms: permutations(n),
        }
    }

    pub fn key_of_edges(&self, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut best: Option<Vec<(usize, usize)>> = None;
        for p in &self.perms {
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (p[u], p[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            e.sort_unstable();
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        }
        best.unwrap_or_default()
    }
}

/// All labeled graphs on `n` vertices, deduplicated by brute force, keeping
/// the connected ones.
pub fn brute_connected_classes(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let canon = BruteCanon::new(n);
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| pairs[b])
            .collect();
        let g = Graph::new(n, &edges).unwrap();
        if connected(&g) {
            seen.insert(canon.key_of_edges(&edges));
        }
    }
    seen
}

/// AHU encoding of a tree rooted at `root`, ignoring `parent`.
fn ahu(t: &Graph, root: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t
        .neighbors(root)
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| ahu(t, c, root))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Isomorphism key for a free tree: minimal AHU string over its centers.
pub fn tree_key(t: &Graph) -> String {
    let n = t.order();
    if n == 1 {
        return "()".into();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in t.neighbors(leaf) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            degree[leaf] = 0;
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu(t, c, usize::MAX)).min().unwrap()
}

pub fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).unwrap()
}

/// Isomorphism classes of trees on `n` vertices from every Prüfer sequence.
pub fn prufer_classes(n: usize) -> BTreeSet<String> {
    if n <= 2 {
        return BTreeSet::from([tree_key(&Graph::path(n))]);
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut out = BTreeSet::new();
    loop {
        out.insert(tree_key(&prufer_tree(n, &seq)));
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Tree classes on `n` vertices grown by hanging a leaf anywhere on every
/// class of order `n − 1`.
pub fn grown_classes(n: usize) -> Vec<Graph> {
    let mut level: Vec<Graph> = vec![Graph::path(1)];
    for m in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..m - 1 {
                let mut edges = t.edges().to_vec();
                edges.push((v, m - 1));
                let g = Graph::new(m, &edges).unwrap();
                if seen.insert(tree_key(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

/// Free-tree counts for n = 1..=25 as listed in the standard tables.
pub const FREE_TREES: [u128; 25] = [
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867, 317955,
    823065, 2144505, 5623756, 14828074, 39299897, 104636890,
];

/// Rooted and free tree counts via the Euler transform and Otter's
/// dissimilarity formula.
pub fn otter(n_max: usize) -> Vec<u128> {
    let mut r = vec![0u128; n_max + 1];
    if n_max >= 1 {
        r[1] = 1;
    }
    for n in 1..n_max {
        // (n) r(n+1) = Σ_{k=1..n} (Σ_{d|k} d r(d)) r(n−k+1)
        let mut s = 0u128;
        for k in 1..=n {
            let c: u128 = (1..=k)
                .filter(|d| k % d == 0)
                .map(|d| d as u128 * r[d])
                .sum();
            s += c * r[n - k + 1];
        }
        r[n + 1] = s / n as u128;
    }
    let mut t = vec![0u128; n_max + 1];
    for n in 1..=n_max {
        let mut pairs = 0u128;
        for i in 1..n {
            pairs += r[i] * r[n - i];
        }
        let even = if n % 2 == 0 { r[n / 2] } else { 0 };
        t[n] = r[n] - (pairs - even) / 2;
    }
    t
}
