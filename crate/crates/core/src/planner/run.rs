use alloc::vec::Vec;

use crate::search::{path_weight, SearchGraph, StateId, Weight};

/// `weight(prefix) + β ⊙ weight(suffix)`.
pub fn total_cost(prefix: Weight, suffix: Weight, beta: u64) -> Weight {
    prefix + suffix.scale(beta)
}

/// A prefix-suffix run `prefix · suffix^ω` over the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    prefix: Vec<StateId>,
    suffix: Vec<StateId>,
    accepting: usize,
    prefix_weight: Weight,
    suffix_weight: Weight,
    total: Weight,
}

impl Run {
    /// Assembles a run and prices it on `graph`. `prefix` ends at the
    /// accepting state `s_acc^k`; `suffix` starts and ends there.
    pub fn new<G: SearchGraph>(graph: &G, prefix: Vec<StateId>, suffix: Vec<StateId>, k: usize, beta: u64) -> Self {
        let prefix_weight = path_weight(graph, &prefix);
        let suffix_weight = path_weight(graph, &suffix);
        Self { prefix, suffix, accepting: k, prefix_weight, suffix_weight, total: total_cost(prefix_weight, suffix_weight, beta) }
    }

    pub fn prefix(&self) -> &[StateId] {
        &self.prefix
    }

    pub fn suffix(&self) -> &[StateId] {
        &self.suffix
    }

    /// Index `k` of the accepting state the run loops through.
    pub fn accepting_index(&self) -> usize {
        self.accepting
    }

    pub fn accepting_state(&self) -> StateId {
        self.suffix[0]
    }

    pub fn start(&self) -> StateId {
        self.prefix[0]
    }

    pub fn prefix_weight(&self) -> Weight {
        self.prefix_weight
    }

    pub fn suffix_weight(&self) -> Weight {
        self.suffix_weight
    }

    pub fn total(&self) -> Weight {
        self.total
    }

    pub fn total_cost(&self, beta: u64) -> Weight {
        total_cost(self.prefix_weight, self.suffix_weight, beta)
    }

    /// Edges exist with finite weight, the prefix ends where the loop starts
    /// and the loop closes with at least one edge.
    pub fn is_well_formed<G: SearchGraph>(&self, graph: &G) -> bool {
        let (Some(&last), Some(&first)) = (self.prefix.last(), self.suffix.first()) else { return false };
        self.suffix.len() >= 2
            && last == first
            && self.suffix.last() == Some(&first)
            && path_weight(graph, &self.prefix).is_finite()
            && path_weight(graph, &self.suffix).is_finite()
    }
}
