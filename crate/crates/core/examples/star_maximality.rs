// The star has the largest weighted Szeged index among trees. Checks the
// exhaustive maximum against n(n-1)^2 and walks a path to the star by
// repeatedly contracting internal-leaf edges.
//
// ```text
// cargo run --release --example star_maximality
// ```

use std::error::Error;

use wszeged::index::{star_wsz_closed_form, weighted_szeged};
use wszeged::search::{extremal_trees, Budget, Direction};
use wszeged::transforms::{contract_to_leaf, find_internal_leaf_edges};
use wszeged::{Graph, IndexKind, TreeCode};

pub fn run_example(max_n: usize) -> Result<usize, Box<dyn Error>> {
    for n in 4..=max_n {
        let rec = extremal_trees(n, IndexKind::Wsz, Direction::Max, Budget::shards(2))?;
        let star = TreeCode::of_tree(&Graph::star(n))?;
        println!(
            "n = {n:>2}: max {} over {} trees, closed form {}, star only: {}",
            rec.value,
            rec.examined,
            star_wsz_closed_form(n as u64),
            rec.attaining == [star]
        );
    }

    let mut t = Graph::path(8);
    let mut steps = 0;
    println!("\ncontracting P8:");
    while let Some(&(u, v)) = find_internal_leaf_edges(&t)?.first() {
        let out = contract_to_leaf(&t, u, v)?;
        println!(
            "  {} -> +{} ({})",
            weighted_szeged(&t)?,
            out.delta,
            out.output_code()
        );
        t = out.output;
        steps += 1;
    }
    println!("  reached {} after {steps} steps", weighted_szeged(&t)?);
    Ok(steps)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(12).map(|_| ())
}
