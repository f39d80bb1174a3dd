//! Seeded random trees, plain and with planted patterns, for exercising the
//! transformations beyond exhaustive range.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

/// Uniform labeled tree on `n` vertices from a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    if n <= 2 {
        return Graph::path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &seq)
}

/// Tree with the given Prüfer sequence (length `n − 2`).
pub fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).expect("Prüfer sequences decode to trees")
}

/// Random tree on `n` vertices in which vertex 0 has degree at least `hub`.
pub fn random_tree_with_hub<R: Rng>(n: usize, hub: usize, rng: &mut R) -> Graph {
    assert!(n > hub, "hub degree {hub} needs more than {n} vertices");
    let mut edges: Vec<(usize, usize)> = (1..=hub).map(|v| (0, v)).collect();
    for v in hub + 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    Graph::new(n, &edges).expect("attachment builds a tree")
}

fn with_extra(base: &Graph, extra: usize, new_edges: &[(usize, usize)]) -> Graph {
    let mut edges = base.edges().to_vec();
    edges.extend_from_slice(new_edges);
    Graph::new(base.order() + extra, &edges).expect("planting keeps the graph a tree")
}

/// Randomly relabels the vertices of `g`.
pub fn shuffle_labels<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// Random tree on `n ≥ 7` vertices carrying a 4-ray. Returns the tree and
/// the ray's anchor.
pub fn plant_4ray<R: Rng>(n: usize, rng: &mut R) -> (Graph, usize) {
    assert!(n >= 7);
    let m = n - 4;
    let base = random_tree(m, rng);
    let anchor = rng.gen_range(0..m);
    let t = with_extra(
        &base,
        4,
        &[(anchor, m), (m, m + 1), (m + 1, m + 2), (m + 2, m + 3)],
    );
    (t, anchor)
}

/// Random tree on `n ≥ 8` vertices with a degree-3 vertex carrying two
/// 3-rays. Returns the tree and that vertex.
pub fn plant_two_3rays<R: Rng>(n: usize, rng: &mut R) -> (Graph, usize) {
    assert!(n >= 8);
    let m = n - 7;
    let base = random_tree(m, rng);
    let x = rng.gen_range(0..m);
    let r = m;
    let t = with_extra(
        &base,
        7,
        &[
            (x, r),
            (r, m + 1),
            (m + 1, m + 2),
            (m + 2, m + 3),
            (r, m + 4),
            (m + 4, m + 5),
            (m + 5, m + 6),
        ],
    );
    (t, r)
}

/// Random tree on `n` vertices where vertex 0 has degree at least
/// `degree` and two leaf neighbors.
pub fn plant_two_leaves<R: Rng>(n: usize, degree: usize, rng: &mut R) -> (Graph, usize) {
    assert!(degree >= 2 && n > degree);
    let m = n - 2;
    let base = random_tree_with_hub(m, degree - 2, rng);
    (with_extra(&base, 2, &[(0, m), (0, m + 1)]), 0)
}

/// Random tree on `n` vertices where vertex 0 has degree at least `degree`,
/// two 2-rays and a leaf.
pub fn plant_two_2rays_leaf<R: Rng>(n: usize, degree: usize, rng: &mut R) -> (Graph, usize) {
    assert!(degree >= 3 && n >= degree + 3);
    let m = n - 5;
    let base = random_tree_with_hub(m, degree - 3, rng);
    let t = with_extra(
        &base,
        5,
        &[(0, m), (m, m + 1), (0, m + 2), (m + 2, m + 3), (0, m + 4)],
    );
    (t, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_tree;
    use crate::transforms::{detect_rays, violations_two_2rays_leaf, violations_two_leaves};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prufer_known_sequence() {
        // sequence [3, 3, 3, 4] on 6 vertices: star at 3 plus 4 – 5
        let t = prufer_decode(6, &[3, 3, 3, 4]);
        assert_eq!(t.edges(), &[(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn planted_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 13..30 {
            let t = random_tree(n, &mut rng);
            assert!(is_tree(&t));

            let (t, a) = plant_4ray(n, &mut rng);
            assert!(is_tree(&t) && t.order() == n);
            assert!(detect_rays(&t, a).unwrap().iter().any(|r| r.order() == 4));

            let (t, r) = plant_two_3rays(n, &mut rng);
            assert_eq!(t.degree(r), 3);
            assert!(
                detect_rays(&t, r)
                    .unwrap()
                    .iter()
                    .filter(|x| x.order() == 3)
                    .count()
                    >= 2
            );

            let (t, r) = plant_two_leaves(n, 6, &mut rng);
            assert!(violations_two_leaves(&t).unwrap().contains(&r));

            let (t, r) = plant_two_2rays_leaf(n, 10, &mut rng);
            assert!(violations_two_2rays_leaf(&t).unwrap().contains(&r));
            assert_eq!(shuffle_labels(&t, &mut rng).order(), n);
        }
    }
}
