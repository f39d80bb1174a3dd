// Regenerates the table of trees with minimum weighted Szeged index.
//
// ```text
// cargo run --release --example minimal_trees_table -- 7 16
// ```

use wszeged::search::{regenerate_table, Budget, SearchError, TableRow};

pub fn run_example(lo: usize, hi: usize) -> Result<Vec<TableRow>, SearchError> {
    let rows = regenerate_table(lo..=hi, Budget::shards(4))?;
    println!(
        "{:>3} {:>8} {:>6} {:>5} {:>5}  trees (graph6 / degree sequence)",
        "n", "wSz", "ties", "ABC=", "clean"
    );
    for row in &rows {
        println!(
            "{:>3} {:>8} {:>6} {:>5} {:>5}",
            row.n,
            row.wsz_min,
            row.trees.len(),
            row.abc_coincident,
            row.propositions_clean
        );
        for tree in &row.trees {
            println!(
                "      {}  {:?}{}",
                tree.graph6,
                tree.degree_sequence,
                if tree.abc_minimal {
                    "  (ABC-minimal)"
                } else {
                    ""
                }
            );
        }
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> Result<(), SearchError> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (lo, hi) = match args.as_slice() {
        [lo, hi, ..] => (*lo, *hi),
        [n] => (*n, *n),
        [] => (7, 14),
    };
    run_example(lo, hi).map(|_| ())
}
