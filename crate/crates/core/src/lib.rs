//! Certifying constructions for Hamilton cycles in prisms `G □ K2` and in
//! cartesian products `G □ C_t`, with exact search oracles to back them up.

pub mod budget;
pub mod campaign;
pub mod cactus;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod oracles;
pub mod pipeline;
pub mod products;

pub use budget::{Budget, Outcome};
pub use graph::{Graph, GraphError, Vertex};
