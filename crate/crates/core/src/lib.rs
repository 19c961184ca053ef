//! Exact single-source shortest paths in directed planar graphs with
//! negative edge lengths and no negative cycles.
//!
//! The solver recursively splits the graph into an r-division, computes
//! boundary-to-boundary distances inside each region, runs a Bellman-Ford
//! over the boundary vertices whose relaxations are Monge column-minima
//! problems, and finishes with two price-function Dijkstra passes.

pub mod error;
pub mod graph;
pub mod io;
pub mod monge;
pub mod par;
pub mod pipeline;
pub mod separator;
pub mod sssp;

pub use error::{Error, Result};
pub use graph::{triangulate, PlanarGraph, INF};
