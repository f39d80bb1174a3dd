//! Tree transformations that move the weighted Szeged index in a known
//! direction, together with the structural patterns they rule out in
//! minimal trees.
//!
//! A *k-ray* at an anchor `r` is a pendant path of exactly `k` vertices
//! hanging from `r`: every path vertex except the last has degree 2 and the
//! last is a leaf. The anchor itself has degree at least 2.
//!
//! New vertices created by a transformation take the labels freed by the
//! vertices it removes, smallest first, so outputs stay on `0..n`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_tree, tree_edge_splits, Graph, GraphError};
use crate::treegen::TreeCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("({0}, {1}) is not an internal-leaf edge")]
    NotInternalLeafEdge(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn precondition<T>(msg: impl Into<String>) -> Result<T, TransformError> {
    Err(TransformError::PreconditionViolated(msg.into()))
}

fn require_tree(t: &Graph) -> Result<(), TransformError> {
    if is_tree(t) {
        Ok(())
    } else {
        Err(TransformError::NotATree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformTag {
    /// Internal-leaf edge contracted into a new leaf; raises the index.
    ContractToLeaf,
    /// Two leaves at one vertex replaced by a pendant 2-path.
    TwoLeaves,
    /// Two 2-rays and a leaf replaced by a pendant spider with two 2-paths.
    TwoTwoRaysLeaf,
    /// Tip of a 4-ray moved onto the ray's first vertex.
    Truncate4Ray,
    /// Two 3-rays at a degree-3 vertex replaced by three 2-rays.
    TwoThreeRays,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformOutcome {
    pub tag: TransformTag,
    pub input: Graph,
    pub output: Graph,
    /// `wSz(output) − wSz(input)` for [`TransformTag::ContractToLeaf`],
    /// `wSz(input) − wSz(output)` for every other tag, so a positive delta is
    /// always the proven direction.
    pub delta: i64,
    /// Whether the degree threshold that guarantees `delta > 0` is met.
    pub guaranteed_positive: bool,
}

impl TransformOutcome {
    pub fn output_code(&self) -> TreeCode {
        TreeCode::of_tree(&self.output).expect("transformations output trees")
    }
}

fn wsz_tree(t: &Graph) -> Result<i64, TransformError> {
    let total = tree_edge_splits(t)?.iter().try_fold(0u64, |acc, s| {
        ((t.degree(s.u) + t.degree(s.v)) as u64)
            .checked_mul(s.product())
            .and_then(|x| acc.checked_add(x))
            .ok_or(GraphError::Overflow)
    })?;
    i64::try_from(total).map_err(|_| GraphError::Overflow.into())
}

fn rewire(
    t: &Graph,
    remove: &[(usize, usize)],
    add: &[(usize, usize)],
) -> Result<Graph, TransformError> {
    let norm = |(u, v): (usize, usize)| (u.min(v), u.max(v));
    let removed: Vec<_> = remove.iter().copied().map(norm).collect();
    let mut edges: Vec<_> = t
        .edges()
        .iter()
        .copied()
        .filter(|e| !removed.contains(e))
        .collect();
    edges.extend(add.iter().copied());
    let out = Graph::new(t.order(), &edges)?;
    if !is_tree(&out) {
        return Err(TransformError::NotATree);
    }
    Ok(out)
}

fn outcome(
    tag: TransformTag,
    input: &Graph,
    output: Graph,
    guaranteed_positive: bool,
) -> Result<TransformOutcome, TransformError> {
    let delta = wsz_tree(input)? - wsz_tree(&output)?;
    Ok(TransformOutcome {
        tag,
        input: input.clone(),
        output,
        delta,
        guaranteed_positive,
    })
}

fn leaf_neighbors(t: &Graph, r: usize) -> Vec<usize> {
    t.neighbors(r)
        .iter()
        .copied()
        .filter(|&x| t.is_leaf(x))
        .collect()
}

fn is_internal_leaf_edge(t: &Graph, u: usize, v: usize) -> bool {
    t.has_edge(u, v)
        && t.degree(u) >= 2
        && !t.is_leaf(v)
        && t.neighbors(u).iter().all(|&x| x == v || t.is_leaf(x))
}

/// Ordered pairs `(u, v)` where `u` is an internal leaf whose only non-leaf
/// neighbor is `v`.
pub fn find_internal_leaf_edges(t: &Graph) -> Result<Vec<(usize, usize)>, TransformError> {
    require_tree(t)?;
    if t.order() < 3 {
        return precondition("tree needs at least 3 vertices");
    }
    let mut out = Vec::new();
    for &(a, b) in t.edges() {
        if is_internal_leaf_edge(t, a, b) {
            out.push((a, b));
        }
        if is_internal_leaf_edge(t, b, a) {
            out.push((b, a));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Merges `u` and `v` into one vertex (keeping `u`'s label) and hangs a new
/// leaf from it (taking `v`'s label).
///
/// `delta` is computed from the local change only: the leaves at `u` gain
/// `b − 1` in weight, the branches at `v` gain `a − 1`, and edge `uv` is
/// traded for a pendant edge of the same weight.
pub fn contract_to_leaf(t: &Graph, u: usize, v: usize) -> Result<TransformOutcome, TransformError> {
    require_tree(t)?;
    if !is_internal_leaf_edge(t, u, v) {
        return Err(TransformError::NotInternalLeafEdge(u, v));
    }
    let n = t.order() as i64;
    let a = t.degree(u) as i64;
    let b = t.degree(v) as i64;

    let mut remove = Vec::new();
    let mut add = Vec::new();
    for &y in t.neighbors(v) {
        if y != u {
            remove.push((v, y));
            add.push((u, y));
        }
    }
    let output = rewire(t, &remove, &add)?;

    // branch sizes |Y_i| behind v's other neighbors
    let splits = tree_edge_splits(t)?;
    let branch_sum: i64 = splits
        .iter()
        .filter(|s| (s.u == v) ^ (s.v == v) && s.u != u && s.v != u)
        .map(|s| {
            let y = if s.u == v { s.n_v } else { s.n_u } as i64;
            y * (n - y)
        })
        .sum();
    let delta = (a - 1) * (b - 1) * (n - 1) + (a - 1) * branch_sum + (a + b) * (n - 1)
        - (a + b) * a * (n - a);

    Ok(TransformOutcome {
        tag: TransformTag::ContractToLeaf,
        input: t.clone(),
        output,
        delta,
        guaranteed_positive: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayDescriptor {
    pub anchor: usize,
    /// Path vertices from the anchor's neighbor out to the leaf.
    pub vertices: Vec<usize>,
}

impl RayDescriptor {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn tip(&self) -> usize {
        *self.vertices.last().expect("rays are non-empty")
    }
}

fn ray_from(t: &Graph, anchor: usize, first: usize) -> Option<RayDescriptor> {
    let mut vertices = vec![first];
    let (mut prev, mut cur) = (anchor, first);
    loop {
        match t.degree(cur) {
            1 => return Some(RayDescriptor { anchor, vertices }),
            2 => {
                let next = t.neighbors(cur).iter().copied().find(|&x| x != prev)?;
                vertices.push(next);
                prev = cur;
                cur = next;
            }
            _ => return None,
        }
    }
}

/// All rays hanging from `r`, ordered by their first vertex.
pub fn detect_rays(t: &Graph, r: usize) -> Result<Vec<RayDescriptor>, TransformError> {
    require_tree(t)?;
    if t.degree(r) < 2 {
        return Ok(Vec::new());
    }
    Ok(t.neighbors(r)
        .iter()
        .filter_map(|&x| ray_from(t, r, x))
        .collect())
}

fn rays_of_order(t: &Graph, r: usize, k: usize) -> Vec<RayDescriptor> {
    if t.degree(r) < 2 {
        return Vec::new();
    }
    t.neighbors(r)
        .iter()
        .filter_map(|&x| ray_from(t, r, x))
        .filter(|ray| ray.order() == k)
        .collect()
}

/// Vertices of degree ≥ 6 adjacent to at least two leaves.
pub fn violations_two_leaves(t: &Graph) -> Result<Vec<usize>, TransformError> {
    require_tree(t)?;
    Ok((0..t.order())
        .filter(|&r| t.degree(r) >= 6 && leaf_neighbors(t, r).len() >= 2)
        .collect())
}

/// Replaces two leaves `ℓ1 < ℓ2` at `r` by the path `r – ℓ1 – ℓ2`.
pub fn transform_two_leaves(t: &Graph, r: usize) -> Result<TransformOutcome, TransformError> {
    require_tree(t)?;
    let leaves = leaf_neighbors(t, r);
    if leaves.len() < 2 {
        return precondition(format!("vertex {r} has fewer than two leaf neighbors"));
    }
    let (l1, l2) = (leaves[0], leaves[1]);
    let output = rewire(t, &[(r, l2)], &[(l1, l2)])?;
    outcome(TransformTag::TwoLeaves, t, output, t.degree(r) >= 6)
}

/// Vertices of degree ≥ 10 carrying two 2-rays and a leaf.
pub fn violations_two_2rays_leaf(t: &Graph) -> Result<Vec<usize>, TransformError> {
    require_tree(t)?;
    Ok((0..t.order())
        .filter(|&r| {
            t.degree(r) >= 10
                && rays_of_order(t, r, 2).len() >= 2
                && !leaf_neighbors(t, r).is_empty()
        })
        .collect())
}

/// Removes two 2-rays and a leaf at `r` (five vertices) and attaches a
/// spider `r – y1`, `y1 – y2 – y3`, `y1 – y4 – y5` on the freed labels.
pub fn transform_two_2rays_leaf(t: &Graph, r: usize) -> Result<TransformOutcome, TransformError> {
    require_tree(t)?;
    let rays = rays_of_order(t, r, 2);
    let leaves = leaf_neighbors(t, r);
    if rays.len() < 2 || leaves.is_empty() {
        return precondition(format!("vertex {r} lacks two 2-rays and a leaf"));
    }
    let mut freed: Vec<usize> = rays[0]
        .vertices
        .iter()
        .chain(&rays[1].vertices)
        .copied()
        .chain([leaves[0]])
        .collect();
    freed.sort_unstable();
    let remove: Vec<_> = t
        .edges()
        .iter()
        .copied()
        .filter(|(a, b)| freed.contains(a) || freed.contains(b))
        .collect();
    let [y1, y2, y3, y4, y5] = [freed[0], freed[1], freed[2], freed[3], freed[4]];
    let add = [(r, y1), (y1, y2), (y2, y3), (y1, y4), (y4, y5)];
    let output = rewire(t, &remove, &add)?;
    outcome(TransformTag::TwoTwoRaysLeaf, t, output, t.degree(r) >= 10)
}

/// Vertices incident to a 4-ray.
pub fn violations_4ray(t: &Graph) -> Result<Vec<usize>, TransformError> {
    require_tree(t)?;
    Ok((0..t.order())
        .filter(|&r| !rays_of_order(t, r, 4).is_empty())
        .collect())
}

fn validate_ray(t: &Graph, ray: &RayDescriptor) -> bool {
    t.degree(ray.anchor) >= 2 && ray_from(t, ray.anchor, ray.vertices[0]).as_ref() == Some(ray)
}

/// Moves the tip of a 4-ray `r – r1 – r2 – r3 – r4` onto `r1`, leaving a
/// 3-ray plus a leaf at `r1`. The delta is `2n − 12` for every `n ≥ 7`.
pub fn transform_truncate_4ray(
    t: &Graph,
    ray: &RayDescriptor,
) -> Result<TransformOutcome, TransformError> {
    require_tree(t)?;
    if ray.order() != 4 || !validate_ray(t, ray) {
        return precondition("not a 4-ray of this tree");
    }
    if t.order() < 7 {
        return precondition("needs at least 7 vertices");
    }
    let [r1, _, r3, r4] = [
        ray.vertices[0],
        ray.vertices[1],
        ray.vertices[2],
        ray.vertices[3],
    ];
    let output = rewire(t, &[(r3, r4)], &[(r1, r4)])?;
    outcome(TransformTag::Truncate4Ray, t, output, true)
}

/// Degree-3 vertices adjacent to two 3-rays.
pub fn violations_two_3rays(t: &Graph) -> Result<Vec<usize>, TransformError> {
    require_tree(t)?;
    Ok((0..t.order())
        .filter(|&r| t.degree(r) == 3 && rays_of_order(t, r, 3).len() >= 2)
        .collect())
}

/// Shortens two 3-rays at a degree-3 vertex `r` to 2-rays and hangs the two
/// freed tips from `r` as a third 2-ray. The delta is exactly 2.
pub fn transform_two_3rays(t: &Graph, r: usize) -> Result<TransformOutcome, TransformError> {
    require_tree(t)?;
    if t.degree(r) != 3 {
        return precondition(format!("vertex {r} has degree {}, need 3", t.degree(r)));
    }
    if t.order() < 8 {
        return precondition("needs at least 8 vertices");
    }
    let rays = rays_of_order(t, r, 3);
    if rays.len() < 2 {
        return precondition(format!("vertex {r} carries fewer than two 3-rays"));
    }
    let (a, b) = (&rays[0], &rays[1]);
    let (ta, tb) = (a.tip(), b.tip());
    let (lo, hi) = (ta.min(tb), ta.max(tb));
    let output = rewire(
        t,
        &[(a.vertices[1], ta), (b.vertices[1], tb)],
        &[(r, lo), (lo, hi)],
    )?;
    outcome(TransformTag::TwoThreeRays, t, output, true)
}

/// Per-pattern violations; empty everywhere for a clean tree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    /// Degree ≥ 10 with two 2-rays and a leaf.
    pub two_2rays_leaf: Vec<usize>,
    /// Degree ≥ 6 with two leaves.
    pub two_leaves: Vec<usize>,
    /// Incident to a 4-ray.
    pub four_ray: Vec<usize>,
    /// Degree 3 with two 3-rays.
    pub two_3rays: Vec<usize>,
}

impl PropositionReport {
    pub fn is_clean(&self) -> bool {
        self.two_2rays_leaf.is_empty()
            && self.two_leaves.is_empty()
            && self.four_ray.is_empty()
            && self.two_3rays.is_empty()
    }
}

pub fn check_all_propositions(t: &Graph) -> Result<PropositionReport, TransformError> {
    Ok(PropositionReport {
        two_2rays_leaf: violations_two_2rays_leaf(t)?,
        two_leaves: violations_two_leaves(t)?,
        four_ray: violations_4ray(t)?,
        two_3rays: violations_two_3rays(t)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::weighted_szeged;

    fn wsz(g: &Graph) -> i64 {
        weighted_szeged(g).unwrap().as_int().unwrap() as i64
    }

    /// center 0 with leaves 1, 2 and the path 0 – 3 – 4
    fn chair() -> Graph {
        Graph::new(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
    }

    /// Spider with legs of the given lengths at center 0.
    fn spider(legs: &[usize]) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(next, &edges).unwrap()
    }

    #[test]
    fn internal_leaf_edges() {
        assert_eq!(
            find_internal_leaf_edges(&Graph::path(4)).unwrap(),
            vec![(1, 2), (2, 1)]
        );
        assert!(find_internal_leaf_edges(&Graph::star(5))
            .unwrap()
            .is_empty());
        let found = find_internal_leaf_edges(&chair()).unwrap();
        assert!(found.contains(&(3, 0)));
        assert_eq!(
            find_internal_leaf_edges(&Graph::cycle(4)),
            Err(TransformError::NotATree)
        );
    }

    #[test]
    fn contract_examples() {
        let out = contract_to_leaf(&Graph::path(4), 1, 2).unwrap();
        assert_eq!(out.delta, 2);
        assert_eq!(
            out.output_code(),
            TreeCode::of_tree(&Graph::star(4)).unwrap()
        );

        let out = contract_to_leaf(&chair(), 3, 0).unwrap();
        assert_eq!(wsz(&chair()), 74);
        assert_eq!(out.delta, 6);
        assert_eq!(wsz(&out.output), 80);
        assert_eq!(out.delta, wsz(&out.output) - wsz(&out.input));

        assert_eq!(
            contract_to_leaf(&Graph::path(3), 1, 0),
            Err(TransformError::NotInternalLeafEdge(1, 0))
        );
    }

    #[test]
    fn ray_examples() {
        let p5 = Graph::path(5);
        let rays = detect_rays(&p5, 2).unwrap();
        assert_eq!(rays.len(), 2);
        assert_eq!(rays[0].vertices, vec![1, 0]);
        assert_eq!(rays[1].vertices, vec![3, 4]);

        let rays = detect_rays(&Graph::star(4), 0).unwrap();
        assert_eq!(
            rays.iter().map(RayDescriptor::order).collect::<Vec<_>>(),
            vec![1, 1, 1]
        );

        let s = spider(&[2, 3, 4]);
        let orders: Vec<_> = detect_rays(&s, 0)
            .unwrap()
            .iter()
            .map(RayDescriptor::order)
            .collect();
        assert_eq!(orders, vec![2, 3, 4]);

        // a leaf anchor carries no rays
        assert!(detect_rays(&p5, 0).unwrap().is_empty());
    }

    #[test]
    fn two_leaves_examples() {
        assert_eq!(violations_two_leaves(&Graph::star(8)).unwrap(), vec![0]);
        assert!(violations_two_leaves(&Graph::star(6)).unwrap().is_empty());

        let out = transform_two_leaves(&Graph::star(8), 0).unwrap();
        assert!(out.guaranteed_positive);
        assert_eq!(out.delta, 30);
        assert_eq!(out.output.degree(0), 6);

        let out = transform_two_leaves(&Graph::star(4), 0).unwrap();
        assert!(!out.guaranteed_positive);
        assert_eq!(out.delta, wsz(&out.input) - wsz(&out.output));

        assert!(matches!(
            transform_two_leaves(&Graph::path(5), 2),
            Err(TransformError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn two_leaves_degree_six_in_larger_tree() {
        // r = 0: leaves 1, 2; four 1-paths 0 – x – y to the rest (n = 11)
        let mut edges = vec![(0, 1), (0, 2)];
        for k in 0..4 {
            let x = 3 + 2 * k;
            edges.push((0, x));
            edges.push((x, x + 1));
        }
        let t = Graph::new(11, &edges).unwrap();
        assert_eq!(t.degree(0), 6);
        let out = transform_two_leaves(&t, 0).unwrap();
        assert!(out.delta > 0);
        assert_eq!(out.delta, wsz(&t) - wsz(&out.output));
    }

    /// r = 0 with two 2-rays, one leaf and `extra` more leaves.
    fn two_2rays_witness(extra: usize) -> Graph {
        let mut edges = vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)];
        for k in 0..extra {
            edges.push((0, 6 + k));
        }
        Graph::new(6 + extra, &edges).unwrap()
    }

    #[test]
    fn two_2rays_leaf_examples() {
        let t = two_2rays_witness(7);
        assert_eq!(t.degree(0), 10);
        assert_eq!(violations_two_2rays_leaf(&t).unwrap(), vec![0]);
        let out = transform_two_2rays_leaf(&t, 0).unwrap();
        assert!(out.guaranteed_positive && out.delta > 0);
        assert_eq!(out.output.degree(0), 8);
        assert_eq!(out.delta, wsz(&t) - wsz(&out.output));

        let t9 = two_2rays_witness(6);
        assert!(violations_two_2rays_leaf(&t9).unwrap().is_empty());

        let small = two_2rays_witness(1);
        assert_eq!(small.degree(0), 4);
        let out = transform_two_2rays_leaf(&small, 0).unwrap();
        assert!(!out.guaranteed_positive);
        assert!(transform_two_2rays_leaf(&Graph::star(6), 0).is_err());
    }

    #[test]
    fn truncate_4ray_examples() {
        // center 0: a 4-ray and two leaves, n = 7
        let t = spider(&[4, 1, 1]);
        let ray = detect_rays(&t, 0)
            .unwrap()
            .into_iter()
            .find(|r| r.order() == 4)
            .unwrap();
        let out = transform_truncate_4ray(&t, &ray).unwrap();
        assert_eq!(out.delta, 2);
        assert_eq!(out.delta, wsz(&t) - wsz(&out.output));

        let t = spider(&[4, 3, 2]);
        assert_eq!(t.order(), 10);
        let ray = detect_rays(&t, 0)
            .unwrap()
            .into_iter()
            .find(|r| r.order() == 4)
            .unwrap();
        assert_eq!(transform_truncate_4ray(&t, &ray).unwrap().delta, 8);

        let t = spider(&[4, 1]);
        let ray = detect_rays(&t, 0)
            .unwrap()
            .into_iter()
            .find(|r| r.order() == 4)
            .unwrap();
        assert!(matches!(
            transform_truncate_4ray(&t, &ray),
            Err(TransformError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn two_3rays_examples() {
        let t = spider(&[3, 3, 1]);
        assert_eq!(t.order(), 8);
        let out = transform_two_3rays(&t, 0).unwrap();
        assert_eq!(out.delta, 2);
        assert_eq!(out.output.degree(0), 4);
        assert_eq!(out.delta, wsz(&t) - wsz(&out.output));

        let t = spider(&[3, 3, 1, 1]);
        assert!(matches!(
            transform_two_3rays(&t, 0),
            Err(TransformError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn proposition_report_examples() {
        let report = check_all_propositions(&Graph::path(25)).unwrap();
        assert!(!report.four_ray.is_empty());
        let report = check_all_propositions(&Graph::star(10)).unwrap();
        assert_eq!(report.two_leaves, vec![0]);
        assert!(!report.is_clean());
    }
}
