//! Optimality oracles and the comparison replanners.

mod iterative;
mod local;
mod oracle;
mod shortest;

pub use iterative::IterativeReplanner;
pub use local::LocalRevision;
pub use oracle::{bellman_ford_oracle, dijkstra_oracle, OracleResult};
pub use shortest::{bellman_ford_from, greedy_path, shortest_from, shortest_to, ShortestPaths};
