// Wiener, Szeged, weighted Szeged and ABC indices of a few familiar graphs,
// with the per-edge split behind the weighted Szeged value.
//
// ```text
// cargo run --example indices
// ```

use std::error::Error;

use wszeged::graph::all_edge_splits_bfs;
use wszeged::index::{abc, szeged, weighted_szeged, wiener};
use wszeged::Graph;

pub fn run_example() -> Result<Vec<(String, u64)>, Box<dyn Error>> {
    let graphs = [
        ("P4", Graph::path(4)),
        ("S5", Graph::star(5)),
        ("C6", Graph::cycle(6)),
        ("K4", Graph::complete(4)),
        ("K3,3", Graph::complete_bipartite(3, 3)),
    ];
    println!(
        "{:<6} {:>4} {:>4} {:>6} {:>10}",
        "graph", "W", "Sz", "wSz", "ABC"
    );
    let mut out = Vec::new();
    for (name, g) in &graphs {
        let wsz = weighted_szeged(g)?;
        println!(
            "{:<6} {:>4} {:>4} {:>6} {:>10.6}",
            name,
            wiener(g)?.to_string(),
            szeged(g)?.to_string(),
            wsz.to_string(),
            abc(g)?.as_f64()
        );
        out.push((name.to_string(), wsz.as_int().unwrap_or_default()));
    }

    let c6 = &graphs[2].1;
    println!("\nedge splits of C6 (n_u | n_v, equidistant):");
    for s in all_edge_splits_bfs(c6)? {
        let weight = c6.degree(s.u) + c6.degree(s.v);
        println!(
            "  {}-{}: {} | {}, eq {}, term {}",
            s.u,
            s.v,
            s.n_u,
            s.n_v,
            s.eq,
            weight as u64 * s.product()
        );
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
