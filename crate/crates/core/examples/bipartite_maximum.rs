// Balanced complete bipartite graphs: the closed form n * floor(n^2/4)^2,
// and an exhaustive check that they beat every other connected bipartite
// graph on up to seven vertices.
//
// ```text
// cargo run --example bipartite_maximum
// ```

use std::error::Error;

use wszeged::index::{balanced_bipartite_wsz_closed_form, weighted_szeged};
use wszeged::search::{balanced_bipartite, check_bipartite_maximum};

pub fn run_example() -> Result<bool, Box<dyn Error>> {
    for n in [2usize, 5, 10, 20, 40, 60] {
        let k = balanced_bipartite(n);
        println!(
            "K({},{}): wSz {} closed form {}",
            n / 2,
            n.div_ceil(2),
            weighted_szeged(&k)?,
            balanced_bipartite_wsz_closed_form(n as u64)
        );
    }
    let mut all = true;
    for n in 3..=7 {
        let c = check_bipartite_maximum(n)?;
        println!(
            "n = {n}: {} bipartite graphs, maximum {}, bound {}, unique balanced maximizer: {}",
            c.bipartite_graphs, c.maximum, c.bound, c.unique_maximizer_is_balanced
        );
        all &= c.unique_maximizer_is_balanced && c.bound_respected;
    }
    Ok(all)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
