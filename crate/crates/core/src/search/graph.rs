use alloc::vec::Vec;

use super::Weight;

pub type StateId = u32;

/// Directed graph with `Weight`-valued edges, as seen by the search engines.
///
/// Edges of infinite weight are allowed and behave as deleted edges.
pub trait SearchGraph {
    /// Whether `s` names a vertex of this graph.
    fn contains(&self, s: StateId) -> bool;

    fn for_each_successor<F: FnMut(StateId, Weight)>(&self, s: StateId, f: F);

    fn for_each_predecessor<F: FnMut(StateId, Weight)>(&self, s: StateId, f: F);

    fn edge_weight(&self, from: StateId, to: StateId) -> Option<Weight> {
        let mut found = None;
        self.for_each_successor(from, |t, w| {
            if t == to && found.is_none() {
                found = Some(w);
            }
        });
        found
    }
}

impl<G: SearchGraph + ?Sized> SearchGraph for &G {
    fn contains(&self, s: StateId) -> bool {
        (**self).contains(s)
    }

    fn for_each_successor<F: FnMut(StateId, Weight)>(&self, s: StateId, f: F) {
        (**self).for_each_successor(s, f)
    }

    fn for_each_predecessor<F: FnMut(StateId, Weight)>(&self, s: StateId, f: F) {
        (**self).for_each_predecessor(s, f)
    }

    fn edge_weight(&self, from: StateId, to: StateId) -> Option<Weight> {
        (**self).edge_weight(from, to)
    }
}

/// Plain adjacency-list graph with mutable edge weights.
#[derive(Debug, Clone, Default)]
pub struct AdjacencyGraph {
    succ: Vec<Vec<(StateId, Weight)>>,
    pred: Vec<Vec<(StateId, Weight)>>,
}

impl AdjacencyGraph {
    pub fn new(num_states: usize) -> Self {
        Self { succ: alloc::vec![Vec::new(); num_states], pred: alloc::vec![Vec::new(); num_states] }
    }

    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    /// Inserts the edge or overwrites its weight.
    pub fn set_edge(&mut self, from: StateId, to: StateId, w: Weight) {
        let (f, t) = (from as usize, to as usize);
        match self.succ[f].iter_mut().find(|(v, _)| *v == to) {
            Some(e) => e.1 = w,
            None => self.succ[f].push((to, w)),
        }
        match self.pred[t].iter_mut().find(|(u, _)| *u == from) {
            Some(e) => e.1 = w,
            None => self.pred[t].push((from, w)),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (StateId, StateId, Weight)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&(v, w)| (u as StateId, v, w)))
    }
}

impl SearchGraph for AdjacencyGraph {
    fn contains(&self, s: StateId) -> bool {
        (s as usize) < self.succ.len()
    }

    fn for_each_successor<F: FnMut(StateId, Weight)>(&self, s: StateId, mut f: F) {
        for &(v, w) in &self.succ[s as usize] {
            f(v, w);
        }
    }

    fn for_each_predecessor<F: FnMut(StateId, Weight)>(&self, s: StateId, mut f: F) {
        for &(u, w) in &self.pred[s as usize] {
            f(u, w);
        }
    }
}
