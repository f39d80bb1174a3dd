//! Distance-based topological indices (Wiener, Szeged, weighted Szeged) and
//! the atom-bond connectivity index, with exhaustive enumeration of free
//! trees and small connected graphs for extremal search.

pub mod cli;
pub mod graph;
pub mod graph6;
pub mod index;
pub mod samples;
pub mod search;
pub mod transforms;
pub mod treegen;

pub use graph::{build_graph, Graph, GraphError};
pub use index::{IndexKind, IndexValue};
pub use treegen::{decode, enumerate_trees, TreeCode};
