//! Büchi automata, weighted transition systems and their (relaxed) product.

mod guard;
mod nba;
mod product;
mod wts;

use thiserror::Error;

pub use guard::{Guard, LabelSet, MAX_ENUMERATED_PROPOSITIONS};
pub use nba::{ChiPair, Nba, NbaTransition, TransitionTable};
pub use product::{PaEdgeChange, ProductAutomaton, ProductMode, WtsChange};
pub use wts::{Wts, WtsEdge};

use crate::logic::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("automaton has no initial state")]
    NoInitialState,
    #[error("state {state} is out of range ({states} states)")]
    StateOutOfRange { state: usize, states: usize },
    #[error("guard references unknown proposition index {0}")]
    UnknownProposition(usize),
    #[error("{0} propositions are too many to enumerate the alphabet")]
    AlphabetTooLarge(usize),
    #[error("proposition universes differ (expected {expected}, found {found})")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("edge {from} -> {to} must have a finite positive weight")]
    InvalidWeight { from: usize, to: usize },
    #[error("duplicate edge {from} -> {to}")]
    DuplicateEdge { from: usize, to: usize },
    #[error("unknown transition-system edge {from} -> {to}")]
    UnknownEdge { from: usize, to: usize },
    #[error("product automaton exceeds the 32-bit state index space")]
    ProductTooLarge,
}

/// `χ(q_m, q_n)` as an explicit list of labels.
pub fn chi(nba: &Nba, from: usize, to: usize) -> alloc::vec::Vec<Label> {
    nba.chi(from, to).iter().collect()
}

/// Violation `Dist(⟨π_i,q_m⟩, ⟨π_j,q_n⟩)` for a transition entering a system
/// state labelled `target_label`: zero when the label enables `q_m → q_n`,
/// otherwise the smallest `rho` to an enabling label. `None` when `χ` is
/// empty, in which case no relaxed edge exists.
pub fn dist(nba: &Nba, from: usize, to: usize, target_label: Label) -> Option<u32> {
    nba.chi(from, to).min_distance(target_label)
}
