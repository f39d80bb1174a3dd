// Orders where some tree minimizes both the weighted Szeged index and the
// atom-bond connectivity index.
//
// ```text
// cargo run --release --example abc_coincidence -- 4 16
// ```

use std::error::Error;

use wszeged::search::{coincidence_report, Budget};

pub fn run_example(lo: usize, hi: usize) -> Result<Vec<usize>, Box<dyn Error>> {
    let mut hits = Vec::new();
    for n in lo..=hi {
        let r = coincidence_report(n, Budget::shards(2))?;
        println!(
            "n = {n:>2}: wSz min {} ({} trees), ABC min {} ({} trees), shared {}",
            r.wsz_min.value,
            r.wsz_min.attaining.len(),
            r.abc_min.value,
            r.abc_min.attaining.len(),
            r.intersection.len()
        );
        if !r.intersection.is_empty() {
            hits.push(n);
        }
    }
    println!("coincident at {hits:?}");
    Ok(hits)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (lo, hi) = match args.as_slice() {
        [lo, hi, ..] => (*lo, *hi),
        _ => (4, 16),
    };
    run_example(lo, hi).map(|_| ())
}
