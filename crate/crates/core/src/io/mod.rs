//! Graph text format and seeded instance generators.

pub mod format;
pub mod generate;

pub use format::{parse_graph, read_graph, write_graph};
pub use generate::{generate, plant_negative_cycle, Family, GeneratorSpec};
