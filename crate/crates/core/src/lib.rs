//! Exact graph coloring by incremental SAT search over the Zykov tree.

pub mod batch;
pub mod bitset;
pub mod bounds;
pub mod driver;
pub mod encodings;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod preprocess;
pub mod sat;
pub mod zykov;

pub use error::{Error, GraphError, Result};
pub use graph::Graph;
