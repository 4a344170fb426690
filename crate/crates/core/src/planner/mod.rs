//! The LTL-D* planner: one incremental search per accepting state for its
//! cheapest loop, and one main search from the robot's state to a global
//! imaginary goal reached from each accepting state at `β ⊙ loop cost`.

mod execution;
mod heuristic;
mod ltl_dstar;
mod run;
mod suffix;
mod views;

use thiserror::Error;

pub use execution::{Execution, Phase, Position, Step};
pub use heuristic::{Geometry, ProductHeuristic};
pub use ltl_dstar::{Planner, PlannerConfig, SuffixPhasePolicy};
pub use run::{total_cost, Run};
pub use suffix::SuffixRecord;
pub use views::{MainView, SuffixView};

use crate::automata::{AutomataError, ProductAutomaton, WtsChange};
use crate::search::SearchError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("no accepting run exists")]
    NoAcceptingRun,
    #[error("beta must be at least 1")]
    InvalidBeta,
    #[error("replanning requested before an initial plan")]
    NotPlanned,
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Common interface of the planner and the comparison baselines.
pub trait Replanner {
    fn plan_initial(&mut self) -> Result<Run, PlanError>;

    /// Applies `changes` to the owned product and returns a run from the
    /// execution's current state.
    fn replan(&mut self, changes: &[WtsChange], execution: &Execution) -> Result<Run, PlanError>;

    /// State expansions spent by the most recent plan or replan.
    fn last_expansions(&self) -> u64;

    fn product(&self) -> &ProductAutomaton;

    fn beta(&self) -> u64;
}
