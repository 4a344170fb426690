use alloc::vec::Vec;

use super::views::SuffixView;
use crate::automata::{PaEdgeChange, ProductAutomaton};
use crate::search::{SearchInstance, StateId, Weight, ZeroHeuristic};

/// Cheapest loop through one accepting state, kept up to date incrementally.
#[derive(Debug, Clone)]
pub struct SuffixRecord {
    k: usize,
    acc: StateId,
    instance: SearchInstance<ZeroHeuristic>,
    cycle: Vec<StateId>,
    cost: Weight,
}

impl SuffixRecord {
    /// Searches `s_acc^k → s_img^k` from scratch.
    pub fn initialize(pa: &ProductAutomaton, k: usize) -> Self {
        let acc = pa.accepting_state(k);
        let view = SuffixView::new(pa, acc);
        let mut instance = SearchInstance::initialize(&view, acc, view.img(), ZeroHeuristic)
            .expect("accepting state and imaginary goal belong to the suffix view");
        instance.compute_shortest_path(&view);
        let mut record = Self { k, acc, instance, cycle: Vec::new(), cost: Weight::INFINITY };
        record.extract(&view);
        record
    }

    fn extract(&mut self, view: &SuffixView<'_>) {
        self.cost = self.instance.g(self.acc);
        self.cycle.clear();
        if self.cost.is_infinite() {
            return;
        }
        if let Ok(mut path) = self.instance.extract_path(view, self.acc) {
            if let Some(last) = path.last_mut() {
                *last = self.acc;
            }
            self.cycle = path;
        } else {
            self.cost = Weight::INFINITY;
        }
    }

    /// Mirrors `mods` (already applied to `pa`) onto the imaginary goal,
    /// repairs the search and re-extracts the loop. Returns whether the loop
    /// cost changed.
    pub fn replan(&mut self, pa: &ProductAutomaton, mods: &[PaEdgeChange]) -> bool {
        let view = SuffixView::new(pa, self.acc);
        let img = view.img();
        let mut changed = Vec::new();
        for m in mods {
            if self.instance.is_affected_by(m.from, m.to) {
                changed.push((m.from, m.to));
            }
            if m.to == self.acc {
                changed.push((m.from, img));
            }
        }
        if changed.is_empty() {
            return false;
        }
        self.instance
            .apply_edge_changes(&view, &changed, 0)
            .expect("mods name edges present in the product");
        self.instance.compute_shortest_path(&view);
        let before = self.cost;
        self.extract(&view);
        before != self.cost
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn accepting_state(&self) -> StateId {
        self.acc
    }

    /// `s_acc^k … s_acc^k`, empty when no loop exists.
    pub fn cycle(&self) -> &[StateId] {
        &self.cycle
    }

    pub fn cost(&self) -> Weight {
        self.cost
    }

    /// True while the search never reached past the imaginary goal, in which
    /// case only edges into `s_acc^k` can affect it.
    pub fn is_dormant(&self) -> bool {
        self.instance.touched_states() <= 1
    }

    pub fn instance(&self) -> &SearchInstance<ZeroHeuristic> {
        &self.instance
    }

    pub(crate) fn take_expansions(&mut self) -> u64 {
        let e = self.instance.stats().expansions;
        self.instance.reset_stats();
        e
    }
}
