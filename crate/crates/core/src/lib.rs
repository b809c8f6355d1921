//! Edge-coloring toolkit: partial colorings and Kempe chains, fan-type recoloring structures
//! with their checkers, an exact chromatic-index oracle, overfullness arithmetic and a census
//! driver for small critical graphs.

pub mod bitset;
pub mod census;
pub mod cli;
pub mod coloring;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod overfull;
pub mod structures;

pub use bitset::{ColorSet, VertexSet};
pub use coloring::{Color, ColoringError, KempeChain, PartialEdgeColoring, SwapScript};
pub use graph::{Edge, Graph, GraphError};
