//! Graph coloring heuristics: greedy baselines, an exact oracle for small
//! graphs, a fixed-parameter dynamic recoloring step and the turbo-charged
//! incremental edge greedy that uses it.

pub mod bench;
pub mod coloring;
pub mod dgc;
pub mod dimacs;
pub mod exact;
pub mod graph;
pub mod greedy;
pub mod turbo;

pub use coloring::{is_proper, verify, Color, Coloring, ColoringError};
pub use dimacs::{parse_dimacs, read_dimacs_file, write_dimacs, ParseError};
pub use graph::{Edge, Graph, GraphError, VertexId};
