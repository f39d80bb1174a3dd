//! Simple undirected graphs, BFS distances and the per-edge vertex splits
//! (`n_u`, `n_v`, equidistant) that every distance-based index is built on.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Errors raised while building graphs or computing splits and indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge ({0}, {1}) is not present")]
    EdgeNotPresent(usize, usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("index value overflows 64-bit arithmetic")]
    Overflow,
}

/// Immutable simple undirected graph on vertices `0..order`.
///
/// Edges are stored normalized as `(u, v)` with `u < v` and sorted, so two
/// graphs compare equal exactly when they have the same order and edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range vertices.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adjacency = vec![Vec::new(); order];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let degrees = adjacency.iter().map(Vec::len).collect();
        Ok(Graph {
            order,
            edges: normalized,
            adjacency,
            degrees,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degrees[v] == 1
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(
            perm.len(),
            self.order,
            "permutation length must equal order"
        );
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::new(self.order, &edges).expect("relabeling preserves simplicity")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path is simple")
    }

    /// Star on `n` vertices with center 0.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::new(n, &edges).expect("star is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph is simple")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::new(a + b, &edges).expect("complete bipartite graph is simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order, self.edges)
    }
}

/// Builds a graph; see [`Graph::new`].
pub fn build_graph(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    Graph::new(order, edges)
}

/// Shortest-path distances (in edges) from a single source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    /// `None` marks an unreachable vertex.
    pub dist: Vec<Option<u32>>,
}

impl DistanceRow {
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }

    pub fn all_reachable(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }
}

pub fn bfs_distances(g: &Graph, source: usize) -> DistanceRow {
    let mut dist = vec![None; g.order()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices are labeled");
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    DistanceRow { source, dist }
}

/// Vertex partition induced by an edge `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeSplit {
    pub u: usize,
    pub v: usize,
    /// Vertices strictly closer to `u`.
    pub n_u: u64,
    /// Vertices strictly closer to `v`.
    pub n_v: u64,
    /// Vertices at equal distance from both ends.
    pub eq: u64,
}

impl EdgeSplit {
    pub fn product(&self) -> u64 {
        self.n_u * self.n_v
    }
}

pub fn is_connected(g: &Graph) -> bool {
    g.order() <= 1 || bfs_distances(g, 0).all_reachable()
}

/// Split of edge `(u, v)` from two BFS runs.
pub fn edge_split_bfs(g: &Graph, u: usize, v: usize) -> Result<EdgeSplit, GraphError> {
    if !g.has_edge(u, v) {
        return Err(GraphError::EdgeNotPresent(u, v));
    }
    let from_u = bfs_distances(g, u);
    if !from_u.all_reachable() {
        return Err(GraphError::Disconnected);
    }
    let from_v = bfs_distances(g, v);
    Ok(split_from_rows(u, v, &from_u, &from_v))
}

fn split_from_rows(u: usize, v: usize, from_u: &DistanceRow, from_v: &DistanceRow) -> EdgeSplit {
    let (mut n_u, mut n_v, mut eq) = (0, 0, 0);
    for (du, dv) in from_u.dist.iter().zip(&from_v.dist) {
        match du.cmp(dv) {
            std::cmp::Ordering::Less => n_u += 1,
            std::cmp::Ordering::Greater => n_v += 1,
            std::cmp::Ordering::Equal => eq += 1,
        }
    }
    EdgeSplit { u, v, n_u, n_v, eq }
}

/// Splits for every edge of a connected graph, in edge order, reusing one
/// BFS row per vertex.
pub fn all_edge_splits_bfs(g: &Graph) -> Result<Vec<EdgeSplit>, GraphError> {
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    let rows: Vec<DistanceRow> = (0..g.order()).map(|s| bfs_distances(g, s)).collect();
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| split_from_rows(u, v, &rows[u], &rows[v]))
        .collect())
}

/// Tree splits from subtree sizes in a single rooted traversal.
///
/// For each edge `(u, v)` (with `u < v`) the side containing `u` is `n_u`.
pub fn tree_edge_splits(t: &Graph) -> Result<Vec<EdgeSplit>, GraphError> {
    let n = t.order();
    if n == 0 || t.size() + 1 != n {
        return Err(GraphError::NotATree);
    }
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in t.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    if order.len() != n {
        return Err(GraphError::NotATree);
    }
    let mut subtree = vec![1u64; n];
    for &x in order.iter().rev().take(n - 1) {
        subtree[parent[x]] += subtree[x];
    }
    let n = n as u64;
    Ok(t.edges()
        .iter()
        .map(|&(u, v)| {
            let (n_u, n_v) = if parent[v] == u {
                (n - subtree[v], subtree[v])
            } else {
                (subtree[u], n - subtree[u])
            };
            EdgeSplit {
                u,
                v,
                n_u,
                n_v,
                eq: 0,
            }
        })
        .collect())
}

/// Connectivity, tree-ness and an optional proper two-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub is_connected: bool,
    pub is_tree: bool,
    /// `Some(colors)` with colors in `{0, 1}` when the graph is bipartite.
    pub bipartition: Option<Vec<u8>>,
}

impl Classification {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }
}

pub fn classify(g: &Graph) -> Classification {
    let n = g.order();
    let mut color: Vec<Option<u8>> = vec![None; n];
    let mut components = 0;
    let mut bipartite = true;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        components += 1;
        color[s] = Some(0);
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].expect("queued vertices are colored");
            for &y in g.neighbors(x) {
                match color[y] {
                    None => {
                        color[y] = Some(1 - cx);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => bipartite = false,
                    Some(_) => {}
                }
            }
        }
    }
    let is_connected = components <= 1;
    Classification {
        is_connected,
        is_tree: is_connected && n >= 1 && g.size() + 1 == n,
        bipartition: bipartite.then(|| color.into_iter().map(|c| c.unwrap_or(0)).collect()),
    }
}

pub fn is_tree(g: &Graph) -> bool {
    g.order() >= 1 && g.size() + 1 == g.order() && is_connected(g)
}
