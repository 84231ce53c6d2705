//! Labeled multigraphs, edits and the graph families used throughout.

mod families;
mod graph;
mod io;
mod iso;

pub use families::{
    banana, circulant_12, complete_graph, connected_multigraphs, cycle, random_connected,
    subdivided_k4, zigzag,
};
pub use graph::{Edge, Graph, GraphInvariants};
pub use iso::{canonical_form, is_isomorphic};
