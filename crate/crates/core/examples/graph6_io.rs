// Reading and writing graph6, canonical labels and isomorphism tests.
//
// ```text
// cargo run --example graph6_io
// ```

use std::error::Error;

use wszeged::graph6::{
    canonical_form, is_isomorphic, parse_graph6, read_graph6_lines, write_graph6, ErrorPolicy,
};
use wszeged::index::weighted_szeged;
use wszeged::Graph;

pub fn run_example() -> Result<usize, Box<dyn Error>> {
    let petersen = Graph::new(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    )?;
    let text = write_graph6(&petersen);
    println!(
        "Petersen graph: {text}, wSz {}",
        weighted_szeged(&parse_graph6(&text)?)?
    );
    println!("canonical: {}", canonical_form(&petersen)?);

    let shuffled = petersen.relabel(&[3, 9, 0, 6, 1, 8, 2, 5, 7, 4]);
    println!(
        "relabeled: {} isomorphic: {}",
        write_graph6(&shuffled),
        is_isomorphic(&petersen, &shuffled)?
    );

    // a stream with a bad record: skipped under the lenient policy
    let lines = ["C~", "Bw", "C?", "D!!", "CF"];
    let mut reader = read_graph6_lines(&lines, ErrorPolicy::Skip);
    let mut kept = 0;
    for item in reader.by_ref() {
        let (line, g) = item?;
        println!(
            "  line {line}: n = {}, m = {}, canonical {}",
            g.order(),
            g.size(),
            canonical_form(&g)?
        );
        kept += 1;
    }
    println!("kept {kept}, skipped {}", reader.skipped());
    Ok(kept)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
