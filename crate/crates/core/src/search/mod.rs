//! Incremental lexicographic shortest paths (D* Lite over `Weight`).

mod graph;
mod instance;
mod weight;

use thiserror::Error;

pub use graph::{AdjacencyGraph, SearchGraph, StateId};
pub use instance::{path_weight, Heuristic, PopRecord, SearchInstance, SearchStats, ZeroHeuristic};
pub use weight::{Key, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("state {0} is not part of the search graph")]
    StateNotInGraph(StateId),
    #[error("edge {from} -> {to} is not part of the search graph")]
    UnknownEdge { from: StateId, to: StateId },
    #[error("goal is unreachable from state {0}")]
    Unreachable(StateId),
}
