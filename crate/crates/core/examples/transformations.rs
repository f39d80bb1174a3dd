// The four local moves that lower the weighted Szeged index of a tree, each
// applied to a seeded random tree that carries the pattern.
//
// ```text
// cargo run --example transformations -- 20
// ```

use std::error::Error;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wszeged::samples;
use wszeged::transforms::{
    detect_rays, transform_truncate_4ray, transform_two_2rays_leaf, transform_two_3rays,
    transform_two_leaves, TransformOutcome,
};

fn show(name: &str, out: &TransformOutcome) {
    println!(
        "{name:<28} delta {:>4}  {} -> {}",
        out.delta,
        out.input.size(),
        out.output_code()
    );
}

pub fn run_example(n: usize, seed: u64) -> Result<Vec<i64>, Box<dyn Error>> {
    assert!(n >= 13, "the degree-10 pattern needs at least 13 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deltas = Vec::new();

    let (t, r) = samples::plant_two_2rays_leaf(n, 10, &mut rng);
    let out = transform_two_2rays_leaf(&t, r)?;
    show("two 2-rays and a leaf", &out);
    deltas.push(out.delta);

    let (t, r) = samples::plant_two_leaves(n, 6, &mut rng);
    let out = transform_two_leaves(&t, r)?;
    show("two leaves at degree >= 6", &out);
    deltas.push(out.delta);

    let (t, anchor) = samples::plant_4ray(n, &mut rng);
    let ray = detect_rays(&t, anchor)?
        .into_iter()
        .find(|ray| ray.order() == 4)
        .ok_or("planted ray missing")?;
    let out = transform_truncate_4ray(&t, &ray)?;
    show("truncated 4-ray (2n - 12)", &out);
    deltas.push(out.delta);

    let (t, r) = samples::plant_two_3rays(n, &mut rng);
    let out = transform_two_3rays(&t, r)?;
    show("two 3-rays (always 2)", &out);
    deltas.push(out.delta);
    Ok(deltas)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(20);
    run_example(n, 1).map(|_| ())
}
