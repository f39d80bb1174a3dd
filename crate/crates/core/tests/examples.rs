macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(indices, "indices.rs");
example!(enumerate_trees, "enumerate_trees.rs");
example!(star_maximality, "star_maximality.rs");
example!(bipartite_maximum, "bipartite_maximum.rs");
example!(transformations, "transformations.rs");
example!(conjectures, "conjectures.rs");
example!(graph6_io, "graph6_io.rs");
example!(abc_coincidence, "abc_coincidence.rs");
example!(minimal_trees_table, "minimal_trees_table.rs");

#[test]
fn indices_example_runs() {
    let values = indices::run_example().unwrap();
    assert!(values.contains(&("P4".to_string(), 34)));
    assert!(values.contains(&("K4".to_string(), 36)));
    assert!(values.contains(&("S5".to_string(), 80)));
}

#[test]
fn enumerate_trees_example_runs() {
    assert_eq!(enumerate_trees::run_example(7).unwrap(), 11);
}

#[test]
fn star_maximality_example_runs() {
    assert!(star_maximality::run_example(9).unwrap() > 0);
}

#[test]
fn bipartite_maximum_example_runs() {
    assert!(bipartite_maximum::run_example().unwrap());
}

#[test]
fn transformations_example_runs() {
    let deltas = transformations::run_example(20, 1).unwrap();
    assert!(deltas[0] > 0 && deltas[1] > 0);
    assert_eq!(&deltas[2..], &[28, 2]);
}

#[test]
fn conjectures_example_runs() {
    assert!(conjectures::run_example(2..=6).unwrap());
}

#[test]
fn graph6_io_example_runs() {
    assert_eq!(graph6_io::run_example().unwrap(), 4);
}

#[test]
fn abc_coincidence_example_runs() {
    assert_eq!(
        abc_coincidence::run_example(7, 13).unwrap(),
        (7..=13).collect::<Vec<_>>()
    );
}

#[test]
fn minimal_trees_table_example_runs() {
    let rows = minimal_trees_table::run_example(7, 10).unwrap();
    assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), [7, 8, 9, 10]);
    assert!(rows.iter().all(|r| r.propositions_clean));
}
