use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashMap;

use super::{Key, SearchError, SearchGraph, StateId, Weight};

/// Travel-unit estimate `h(from, to)` of the cost from `from` to `to`.
pub trait Heuristic {
    fn estimate(&self, from: StateId, to: StateId) -> u64;
}

/// `h ≡ 0`; turns D* Lite into an incremental Dijkstra.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroHeuristic;

impl Heuristic for ZeroHeuristic {
    fn estimate(&self, _: StateId, _: StateId) -> u64 {
        0
    }
}

impl<F: Fn(StateId, StateId) -> u64> Heuristic for F {
    fn estimate(&self, from: StateId, to: StateId) -> u64 {
        self(from, to)
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    g: Weight,
    rhs: Weight,
    queued: Option<Key>,
}

impl Default for Node {
    fn default() -> Self {
        Node { g: Weight::INFINITY, rhs: Weight::INFINITY, queued: None }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Queue pops that changed a g-value.
    pub expansions: u64,
    /// Queue pops that only refreshed an outdated key.
    pub key_updates: u64,
}

/// One valid queue pop, recorded when pop logging is enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PopRecord {
    pub state: StateId,
    pub key: Key,
    /// `min(g, rhs)` of the state at the time of the pop.
    pub value: Weight,
    pub start_consistent: bool,
}

/// A D* Lite search from a movable start to a fixed goal.
///
/// g and rhs values live in a sparse map; absent states are at infinity. The
/// queue uses lazy deletion: an entry is live only while its key matches the
/// key recorded on the state.
#[derive(Debug, Clone)]
pub struct SearchInstance<H> {
    start: StateId,
    goal: StateId,
    km: u64,
    heuristic: H,
    nodes: HashMap<StateId, Node>,
    queue: BinaryHeap<Reverse<(Key, StateId)>>,
    stats: SearchStats,
    pop_log: Option<Vec<PopRecord>>,
}

impl<H: Heuristic> SearchInstance<H> {
    pub fn initialize<G: SearchGraph>(
        graph: &G,
        start: StateId,
        goal: StateId,
        heuristic: H,
    ) -> Result<Self, SearchError> {
        for s in [start, goal] {
            if !graph.contains(s) {
                return Err(SearchError::StateNotInGraph(s));
            }
        }
        let mut instance = Self {
            start,
            goal,
            km: 0,
            heuristic,
            nodes: HashMap::new(),
            queue: BinaryHeap::new(),
            stats: SearchStats::default(),
            pop_log: None,
        };
        instance.nodes.insert(goal, Node { rhs: Weight::ZERO, ..Node::default() });
        let key = instance.calculate_key(goal);
        instance.enqueue(goal, key);
        Ok(instance)
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn goal(&self) -> StateId {
        self.goal
    }

    pub fn km(&self) -> u64 {
        self.km
    }

    pub fn heuristic(&self) -> &H {
        &self.heuristic
    }

    pub fn g(&self, s: StateId) -> Weight {
        self.nodes.get(&s).map_or(Weight::INFINITY, |n| n.g)
    }

    pub fn rhs(&self, s: StateId) -> Weight {
        self.nodes.get(&s).map_or(Weight::INFINITY, |n| n.rhs)
    }

    pub fn is_consistent(&self, s: StateId) -> bool {
        self.g(s) == self.rhs(s)
    }

    /// Number of live queue entries.
    pub fn queue_len(&self) -> usize {
        self.nodes.values().filter(|n| n.queued.is_some()).count()
    }

    /// Live queue entries as `(state, key)`.
    pub fn queued(&self) -> impl Iterator<Item = (StateId, Key)> + '_ {
        self.nodes.iter().filter_map(|(&s, n)| n.queued.map(|k| (s, k)))
    }

    /// Number of states holding a non-default g or rhs value.
    pub fn touched_states(&self) -> usize {
        self.nodes.len()
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    pub fn reset_stats(&mut self) {
        self.stats = SearchStats::default();
    }

    pub fn record_pops(&mut self, on: bool) {
        self.pop_log = if on { Some(Vec::new()) } else { None };
    }

    pub fn take_pop_log(&mut self) -> Vec<PopRecord> {
        self.pop_log.as_mut().map(core::mem::take).unwrap_or_default()
    }

    /// `[min(g, rhs) + h(start, s) + k_m ; min(g, rhs)]`, where `h` and `k_m`
    /// only ever add travel units.
    pub fn calculate_key(&self, s: StateId) -> Key {
        let base = self.g(s).min(self.rhs(s));
        let shift = self.heuristic.estimate(self.start, s).saturating_add(self.km);
        Key { k1: base.plus_travel(shift), k2: base }
    }

    /// Moves the search start without touching `k_m`.
    pub fn set_start(&mut self, start: StateId) {
        self.start = start;
    }

    /// Moves the search start and grows `k_m` by `h(old start, new start)`.
    pub fn move_start(&mut self, start: StateId) {
        let shift = self.heuristic.estimate(self.start, start);
        self.km = self.km.saturating_add(shift);
        self.start = start;
    }

    fn node_mut(&mut self, s: StateId) -> &mut Node {
        self.nodes.entry(s).or_default()
    }

    fn enqueue(&mut self, s: StateId, key: Key) {
        let node = self.node_mut(s);
        if node.queued != Some(key) {
            node.queued = Some(key);
            self.queue.push(Reverse((key, s)));
        }
    }

    fn dequeue(&mut self, s: StateId) {
        if let Some(n) = self.nodes.get_mut(&s) {
            n.queued = None;
        }
    }

    /// Queue membership follows consistency: inconsistent states are queued
    /// with a fresh key, consistent ones are dropped.
    fn refresh_membership(&mut self, s: StateId) {
        let (g, rhs) = (self.g(s), self.rhs(s));
        if g != rhs {
            let key = self.calculate_key(s);
            self.enqueue(s, key);
        } else {
            self.dequeue(s);
            if g.is_infinite() {
                self.nodes.remove(&s);
            }
        }
    }

    fn best_successor_value<G: SearchGraph>(&self, graph: &G, u: StateId) -> Weight {
        let mut best = Weight::INFINITY;
        graph.for_each_successor(u, |v, w| {
            let candidate = self.g(v) + w;
            if candidate < best {
                best = candidate;
            }
        });
        best
    }

    /// Recomputes `rhs(u)` from its successors (the goal keeps `rhs = 0`) and
    /// fixes up its queue membership.
    pub fn update_vertex<G: SearchGraph>(&mut self, graph: &G, u: StateId) {
        if u != self.goal {
            let rhs = self.best_successor_value(graph, u);
            if rhs.is_finite() || self.nodes.contains_key(&u) {
                self.node_mut(u).rhs = rhs;
            }
        }
        self.refresh_membership(u);
    }

    fn top(&mut self) -> Option<(Key, StateId)> {
        while let Some(&Reverse((key, s))) = self.queue.peek() {
            if self.nodes.get(&s).and_then(|n| n.queued) == Some(key) {
                return Some((key, s));
            }
            self.queue.pop();
        }
        None
    }

    /// Expands states until the start is consistent and every remaining
    /// queued key exceeds the start's key in its first component.
    ///
    /// States tied with the start's first key component are expanded as well,
    /// so every state on any optimal path ends up consistent. This makes
    /// path extraction independent of queue tie-breaking.
    pub fn compute_shortest_path<G: SearchGraph>(&mut self, graph: &G) {
        loop {
            let start_key = self.calculate_key(self.start);
            let start_consistent = self.is_consistent(self.start);
            let Some((k_old, u)) = self.top() else { break };
            if k_old.k1 > start_key.k1 && start_consistent {
                break;
            }
            let k_new = self.calculate_key(u);
            if let Some(log) = self.pop_log.as_mut() {
                let n = self.nodes[&u];
                log.push(PopRecord { state: u, key: k_old, value: n.g.min(n.rhs), start_consistent });
            }
            if k_old < k_new {
                self.stats.key_updates += 1;
                self.enqueue(u, k_new);
                continue;
            }
            self.stats.expansions += 1;
            let (g, rhs) = (self.g(u), self.rhs(u));
            if g > rhs {
                {
                    let node = self.node_mut(u);
                    node.g = rhs;
                    node.queued = None;
                }
                let mut preds = Vec::new();
                graph.for_each_predecessor(u, |p, w| preds.push((p, w)));
                for (p, w) in preds {
                    if p != self.goal {
                        let candidate = rhs + w;
                        if candidate < self.rhs(p) {
                            self.node_mut(p).rhs = candidate;
                        }
                    }
                    self.refresh_membership(p);
                }
            } else {
                let g_old = g;
                self.node_mut(u).g = Weight::INFINITY;
                let mut preds = Vec::new();
                graph.for_each_predecessor(u, |p, w| preds.push((p, w)));
                self.update_vertex(graph, u);
                for (p, w) in preds {
                    if p != self.goal && p != u && self.rhs(p) == g_old + w {
                        self.update_vertex(graph, p);
                    }
                }
            }
        }
    }

    /// Grows `k_m` and re-evaluates the source vertex of every changed edge.
    /// Edge weights must already be updated in `graph`.
    pub fn apply_edge_changes<G: SearchGraph>(
        &mut self,
        graph: &G,
        changed: &[(StateId, StateId)],
        km_increment: u64,
    ) -> Result<(), SearchError> {
        for &(u, v) in changed {
            if graph.edge_weight(u, v).is_none() {
                return Err(SearchError::UnknownEdge { from: u, to: v });
            }
        }
        self.km = self.km.saturating_add(km_increment);
        for &(u, v) in changed {
            if self.is_affected_by(u, v) {
                self.update_vertex(graph, u);
            }
        }
        Ok(())
    }

    /// Whether a weight change on `u → v` can alter `rhs(u)`. It cannot when
    /// `u` is untouched (so `rhs(u) = ∞`) and `g(v) = ∞`.
    pub fn is_affected_by(&self, u: StateId, v: StateId) -> bool {
        self.nodes.contains_key(&u) || self.g(v).is_finite()
    }

    /// Follows `argmin_{s'} g(s') + c(s, s')` from `from` to the goal, breaking
    /// ties by the lowest state index.
    pub fn extract_path<G: SearchGraph>(&self, graph: &G, from: StateId) -> Result<Vec<StateId>, SearchError> {
        if self.g(from).is_infinite() && from != self.goal {
            return Err(SearchError::Unreachable(from));
        }
        let mut path = alloc::vec![from];
        let mut s = from;
        let limit = self.nodes.len() + 1;
        while s != self.goal {
            let mut best: Option<(Weight, StateId)> = None;
            graph.for_each_successor(s, |v, w| {
                let candidate = (self.g(v) + w, v);
                if candidate.0.is_finite() && best.is_none_or(|b| candidate < b) {
                    best = Some(candidate);
                }
            });
            let Some((_, next)) = best else { return Err(SearchError::Unreachable(s)) };
            path.push(next);
            s = next;
            if path.len() > limit {
                return Err(SearchError::Unreachable(from));
            }
        }
        Ok(path)
    }
}

/// Sum of edge weights along `path`; infinite if an edge is missing.
pub fn path_weight<G: SearchGraph>(graph: &G, path: &[StateId]) -> Weight {
    path.windows(2)
        .map(|w| graph.edge_weight(w[0], w[1]).unwrap_or(Weight::INFINITY))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::AdjacencyGraph;
    use alloc::vec;

    fn chain() -> AdjacencyGraph {
        let mut g = AdjacencyGraph::new(3);
        g.set_edge(0, 1, Weight::travel(10));
        g.set_edge(1, 2, Weight::travel(10));
        g
    }

    fn grid(n: u32) -> AdjacencyGraph {
        let mut g = AdjacencyGraph::new((n * n) as usize);
        for r in 0..n {
            for c in 0..n {
                let s = r * n + c;
                if c + 1 < n {
                    g.set_edge(s, s + 1, Weight::travel(10));
                    g.set_edge(s + 1, s, Weight::travel(10));
                }
                if r + 1 < n {
                    g.set_edge(s, s + n, Weight::travel(10));
                    g.set_edge(s + n, s, Weight::travel(10));
                }
            }
        }
        g
    }

    #[test]
    fn fresh_instance() {
        let g = chain();
        let h = |a: StateId, b: StateId| 10 * a.abs_diff(b) as u64;
        let s = SearchInstance::initialize(&g, 0, 2, h).unwrap();
        assert_eq!(s.rhs(2), Weight::ZERO);
        assert_eq!(s.g(2), Weight::INFINITY);
        assert_eq!(s.queue_len(), 1);
        assert_eq!(s.calculate_key(2), Key { k1: Weight::travel(20), k2: Weight::ZERO });
        assert_eq!(s.km(), 0);
        assert_eq!(SearchInstance::initialize(&g, 0, 7, ZeroHeuristic).unwrap_err(), SearchError::StateNotInGraph(7));
    }

    #[test]
    fn key_takes_min_then_adds_heuristic_and_km() {
        let g = chain();
        let mut s = SearchInstance::initialize(&g, 0, 2, |_: StateId, _: StateId| 5).unwrap();
        s.nodes.insert(1, Node { g: Weight::travel(30), rhs: Weight::travel(20), queued: None });
        assert_eq!(s.calculate_key(1), Key { k1: Weight::travel(25), k2: Weight::travel(20) });
        s.km += 7;
        assert_eq!(s.calculate_key(1), Key { k1: Weight::travel(32), k2: Weight::travel(20) });

        s.nodes.insert(0, Node { g: Weight::new(1, 5), rhs: Weight::new(1, 5), queued: None });
        s.nodes.insert(1, Node { g: Weight::travel(99), rhs: Weight::travel(99), queued: None });
        assert!(s.calculate_key(1) < s.calculate_key(0));
    }

    #[test]
    fn update_vertex_prefers_lower_violation() {
        let mut g = AdjacencyGraph::new(4);
        g.set_edge(0, 1, Weight::new(1, 0));
        g.set_edge(0, 2, Weight::travel(40));
        g.set_edge(1, 3, Weight::travel(5));
        g.set_edge(2, 3, Weight::travel(10));
        let mut s = SearchInstance::initialize(&g, 0, 3, ZeroHeuristic).unwrap();
        s.update_vertex(&g, 3);
        assert_eq!(s.rhs(3), Weight::ZERO);
        s.compute_shortest_path(&g);
        assert_eq!(s.g(2), Weight::travel(10));
        assert_eq!(s.g(0), Weight::travel(50));
        assert_eq!(s.extract_path(&g, 0).unwrap(), [0, 2, 3]);
    }

    #[test]
    fn chain_and_disconnection() {
        let mut g = chain();
        let mut s = SearchInstance::initialize(&g, 0, 2, ZeroHeuristic).unwrap();
        s.compute_shortest_path(&g);
        assert_eq!(s.g(0), Weight::travel(20));
        assert_eq!(s.extract_path(&g, 0).unwrap(), [0, 1, 2]);

        let before = s.clone();
        s.apply_edge_changes(&g, &[], 0).unwrap();
        s.compute_shortest_path(&g);
        assert_eq!(s.g(0), before.g(0));
        assert_eq!(s.g(1), before.g(1));

        g.set_edge(1, 2, Weight::INFINITY);
        s.apply_edge_changes(&g, &[(1, 2)], 0).unwrap();
        s.compute_shortest_path(&g);
        assert_eq!(s.g(0), Weight::INFINITY);
        assert_eq!(s.extract_path(&g, 0), Err(SearchError::Unreachable(0)));
        assert_eq!(s.apply_edge_changes(&g, &[(2, 0)], 0), Err(SearchError::UnknownEdge { from: 2, to: 0 }));
    }

    #[test]
    fn diamond_ties_take_lower_index() {
        let mut g = AdjacencyGraph::new(4);
        for (a, b) in [(0, 2), (0, 1), (1, 3), (2, 3)] {
            g.set_edge(a, b, Weight::travel(10));
        }
        let mut s = SearchInstance::initialize(&g, 0, 3, ZeroHeuristic).unwrap();
        s.compute_shortest_path(&g);
        assert_eq!(s.extract_path(&g, 0).unwrap(), [0, 1, 3]);
    }

    #[test]
    fn empty_grid_cost_is_scaled_manhattan() {
        let n = 10;
        let g = grid(n);
        let h = move |a: StateId, b: StateId| 10 * ((a / n).abs_diff(b / n) + (a % n).abs_diff(b % n)) as u64;
        for (start, goal) in [(0, 99), (23, 67), (90, 9), (45, 45)] {
            let mut s = SearchInstance::initialize(&g, start, goal, h).unwrap();
            s.compute_shortest_path(&g);
            assert_eq!(s.g(start), Weight::travel(h(start, goal)));
            let path = s.extract_path(&g, start).unwrap();
            assert_eq!(path_weight(&g, &path), s.g(start));
        }
    }

    #[test]
    fn moving_start_shifts_km() {
        let n = 5;
        let g = grid(n);
        let h = move |a: StateId, b: StateId| 10 * ((a / n).abs_diff(b / n) + (a % n).abs_diff(b % n)) as u64;
        let mut s = SearchInstance::initialize(&g, 0, 24, h).unwrap();
        s.compute_shortest_path(&g);
        s.move_start(6);
        assert_eq!(s.km(), 20);
        s.compute_shortest_path(&g);
        assert_eq!(s.g(6), Weight::travel(60));
        assert_eq!(vec![6, 7, 8, 9, 14, 19, 24], s.extract_path(&g, 6).unwrap());
    }
}
