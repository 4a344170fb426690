use crate::automata::ProductAutomaton;
use crate::search::{SearchGraph, StateId, Weight};

/// The product with an imaginary goal `s_img^k` mirroring every edge into
/// `s_acc^k`. A shortest path `s_acc^k → s_img^k` is a cheapest loop.
#[derive(Clone, Copy)]
pub struct SuffixView<'a> {
    pa: &'a ProductAutomaton,
    acc: StateId,
    img: StateId,
}

impl<'a> SuffixView<'a> {
    pub fn new(pa: &'a ProductAutomaton, acc: StateId) -> Self {
        Self { pa, acc, img: pa.num_states() as StateId }
    }

    pub fn img(&self) -> StateId {
        self.img
    }

    pub fn accepting(&self) -> StateId {
        self.acc
    }
}

impl SearchGraph for SuffixView<'_> {
    fn contains(&self, s: StateId) -> bool {
        s <= self.img
    }

    fn for_each_successor<F: FnMut(StateId, Weight)>(&self, s: StateId, mut f: F) {
        if s == self.img {
            return;
        }
        for (t, w) in self.pa.successors(s) {
            f(t, w);
            if t == self.acc {
                f(self.img, w);
            }
        }
    }

    fn for_each_predecessor<F: FnMut(StateId, Weight)>(&self, s: StateId, mut f: F) {
        let target = if s == self.img { self.acc } else { s };
        for (p, w) in self.pa.predecessors(target) {
            f(p, w);
        }
    }

    fn edge_weight(&self, from: StateId, to: StateId) -> Option<Weight> {
        if from == self.img {
            return None;
        }
        let to = if to == self.img { self.acc } else { to };
        self.pa.edge_weight(from, to)
    }
}

/// The product with the global imaginary goal `s_img`, entered from each
/// `s_acc^k` at weight `costs[k]`, and an optional synthetic start with
/// zero-weight edges to every initial state.
#[derive(Clone, Copy)]
pub struct MainView<'a> {
    pa: &'a ProductAutomaton,
    costs: &'a [Weight],
    synthetic: Option<StateId>,
}

impl<'a> MainView<'a> {
    pub fn new(pa: &'a ProductAutomaton, costs: &'a [Weight], synthetic: Option<StateId>) -> Self {
        debug_assert_eq!(costs.len(), pa.num_accepting());
        Self { pa, costs, synthetic }
    }

    pub fn img(&self) -> StateId {
        self.pa.num_states() as StateId
    }

    /// Index used for the synthetic start, whether or not it is present.
    pub fn synthetic_id(pa: &ProductAutomaton) -> StateId {
        pa.num_states() as StateId + 1
    }
}

impl SearchGraph for MainView<'_> {
    fn contains(&self, s: StateId) -> bool {
        s <= self.img() || Some(s) == self.synthetic
    }

    fn for_each_successor<F: FnMut(StateId, Weight)>(&self, s: StateId, mut f: F) {
        if s == self.img() {
            return;
        }
        if Some(s) == self.synthetic {
            for &init in self.pa.initial_states() {
                f(init, Weight::ZERO);
            }
            return;
        }
        for (t, w) in self.pa.successors(s) {
            f(t, w);
        }
        if let Some(k) = self.pa.accepting_index(s) {
            f(self.img(), self.costs[k]);
        }
    }

    fn for_each_predecessor<F: FnMut(StateId, Weight)>(&self, s: StateId, mut f: F) {
        if s == self.img() {
            for (k, &c) in self.costs.iter().enumerate() {
                f(self.pa.accepting_state(k), c);
            }
            return;
        }
        if Some(s) == self.synthetic {
            return;
        }
        for (p, w) in self.pa.predecessors(s) {
            f(p, w);
        }
        if let Some(synthetic) = self.synthetic {
            if self.pa.initial_states().contains(&s) {
                f(synthetic, Weight::ZERO);
            }
        }
    }

    fn edge_weight(&self, from: StateId, to: StateId) -> Option<Weight> {
        if to == self.img() {
            return self.pa.accepting_index(from).map(|k| self.costs[k]);
        }
        if Some(from) == self.synthetic {
            return self.pa.initial_states().contains(&to).then_some(Weight::ZERO);
        }
        if from == self.img() || !self.pa.contains(from) || !self.pa.contains(to) {
            return None;
        }
        self.pa.edge_weight(from, to)
    }
}
