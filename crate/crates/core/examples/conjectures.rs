// Extremal weighted Szeged values over all connected graphs on up to seven
// vertices: is the minimum a tree, is the maximum the balanced complete
// bipartite graph? Graphs of larger order can be piped in as graph6.
//
// ```text
// cargo run --release --example conjectures
// geng -c 8 | cargo run --release --example conjectures -- -
// ```

use std::error::Error;
use std::io::BufRead;

use wszeged::graph6::{write_graph6, ErrorPolicy};
use wszeged::search::{
    verify_conjecture_max, verify_conjecture_min, ConjectureVerdict, GraphSource,
};

fn line(v: &ConjectureVerdict) {
    let ties: Vec<String> = v.ties.iter().map(write_graph6).collect();
    println!(
        "  {:?} n = {}: value {}, holds {}, exclusive {}{}{}",
        v.conjecture,
        v.n,
        v.extremal_value,
        v.holds,
        v.exclusive,
        if ties.is_empty() {
            String::new()
        } else {
            format!(", tied by {ties:?}")
        },
        v.witness
            .as_ref()
            .map(|w| format!(", witness {}", write_graph6(w)))
            .unwrap_or_default()
    );
}

pub fn run_example(orders: std::ops::RangeInclusive<usize>) -> Result<bool, Box<dyn Error>> {
    let mut all = true;
    for n in orders {
        let min = verify_conjecture_min(GraphSource::BuiltIn(n), ErrorPolicy::Abort)?;
        let max = verify_conjecture_max(GraphSource::BuiltIn(n), ErrorPolicy::Abort)?;
        line(&min);
        line(&max);
        all &= min.holds && max.holds;
    }
    Ok(all)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    if std::env::args().nth(1).as_deref() == Some("-") {
        let lines: Vec<String> = std::io::stdin().lock().lines().collect::<Result<_, _>>()?;
        line(&verify_conjecture_min(
            GraphSource::lines(lines.clone()),
            ErrorPolicy::Skip,
        )?);
        line(&verify_conjecture_max(
            GraphSource::lines(lines),
            ErrorPolicy::Skip,
        )?);
        return Ok(());
    }
    run_example(2..=7).map(|_| ())
}
