//! Incremental, optimal replanning of prefix-suffix runs over the product of a
//! weighted transition system and a Büchi automaton.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the grid world
//! simulator and the command line live in the `ltl-dstar` companion crate.
//!
//! Module map:
//!
//! * [`logic`]: atomic-proposition universes, labels and the label metric.
//! * [`automata`]: guards, Büchi automata, transition systems and products
//!   (plain and relaxed), plus translation of transition-system edits into
//!   product edge changes.
//! * [`search`]: a D* Lite engine over `(violation, travel)` weights.
//! * [`planner`]: the LTL-D* planner (suffix loops, imaginary goals, replanning).
//! * [`baselines`]: Dijkstra/Bellman-Ford oracles and the comparison replanners.

#![no_std]

extern crate alloc;

pub mod automata;
pub mod baselines;
pub mod logic;
pub mod planner;
pub mod search;

pub use automata::{
    Guard, Nba, PaEdgeChange, ProductAutomaton, ProductMode, TransitionTable, Wts, WtsChange,
};
pub use logic::{ApUniverse, Label};
pub use planner::{Execution, Phase, PlanError, Planner, Replanner, Run};
pub use search::{Key, SearchGraph, SearchInstance, StateId, Weight};
