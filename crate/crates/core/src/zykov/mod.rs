//! Zykov-tree propagation over same-color variables.

mod edge_map;
mod merge_state;
mod propagator;

pub use edge_map::EdgeVarMap;
pub use merge_state::MergeState;
pub use propagator::{
    DecisionStrategy, LoggedWitness, ZykovConfig, ZykovPropagator, ZykovStats, WITNESS_LOG_MAX_VERTICES,
};
