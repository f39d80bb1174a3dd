// Streams every tree on `n` vertices up to isomorphism as a canonical level
// sequence and scores it.
//
// ```text
// cargo run --example enumerate_trees -- 7
// ```

use std::error::Error;

use wszeged::graph6::write_graph6;
use wszeged::index::{weighted_szeged, LevelScorer};
use wszeged::treegen::{decode, enumerate_trees, free_tree_count, partition_stream};
use wszeged::IndexKind;

pub fn run_example(n: usize) -> Result<u128, Box<dyn Error>> {
    let mut count = 0u128;
    for code in enumerate_trees(n) {
        let t = decode(&code);
        println!(
            "{:<28} {:<10} wSz {}",
            code.to_string(),
            write_graph6(&t),
            weighted_szeged(&t)?
        );
        count += 1;
    }
    println!("{count} trees, formula says {}", free_tree_count(n));

    // the zero-copy path, split over shards as the search does it
    let mut scorer = LevelScorer::new();
    let mut total = 0u64;
    for mut shard in partition_stream(n, 3) {
        while let Some(levels) = shard.advance() {
            total += scorer
                .score(levels, IndexKind::Wsz)?
                .as_int()
                .unwrap_or_default();
        }
    }
    println!("sum of wSz over all trees: {total}");
    Ok(count)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(6);
    run_example(n).map(|_| ())
}
