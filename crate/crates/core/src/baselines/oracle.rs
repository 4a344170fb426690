use alloc::vec::Vec;

use super::shortest::{bellman_ford_from, shortest_from};
use crate::automata::ProductAutomaton;
use crate::planner::{total_cost, SuffixView};
use crate::search::{StateId, Weight};

/// Brute-force optimum over all accepting states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Cheapest prefix to each `s_acc^k`.
    pub prefix: Vec<Weight>,
    /// Cheapest loop through each `s_acc^k`; `None` where the prefix is
    /// infinite and the loop was not evaluated.
    pub loops: Vec<Option<Weight>>,
    pub best: Option<usize>,
    pub total: Weight,
}

fn assemble(prefix: Vec<Weight>, loop_of: impl Fn(usize) -> Weight, beta: u64) -> OracleResult {
    let loops: Vec<Option<Weight>> =
        prefix.iter().enumerate().map(|(k, p)| p.is_finite().then(|| loop_of(k))).collect();
    let mut best = None;
    let mut total = Weight::INFINITY;
    for (k, (p, l)) in prefix.iter().zip(&loops).enumerate() {
        if let Some(l) = l {
            let t = total_cost(*p, *l, beta);
            if t.is_finite() && t < total {
                total = t;
                best = Some(k);
            }
        }
    }
    OracleResult { prefix, loops, best, total }
}

/// Dijkstra from `starts` to every accepting state, plus a Dijkstra loop
/// search through each reachable one.
pub fn dijkstra_oracle(pa: &ProductAutomaton, starts: &[StateId], beta: u64) -> OracleResult {
    let n = pa.num_states();
    let reach = shortest_from(pa, n, starts);
    let prefix = pa.accepting_states().map(|s| reach.dist[s as usize]).collect();
    let loop_of = |k: usize| {
        let view = SuffixView::new(pa, pa.accepting_state(k));
        shortest_from(&view, n + 1, &[view.accepting()]).dist[n]
    };
    assemble(prefix, loop_of, beta)
}

/// The same optimum computed with Bellman-Ford relaxation.
pub fn bellman_ford_oracle(pa: &ProductAutomaton, starts: &[StateId], beta: u64) -> OracleResult {
    let n = pa.num_states();
    let reach = bellman_ford_from(pa, n, starts);
    let prefix = pa.accepting_states().map(|s| reach[s as usize]).collect();
    let loop_of = |k: usize| {
        let view = SuffixView::new(pa, pa.accepting_state(k));
        bellman_ford_from(&view, n + 1, &[view.accepting()])[n]
    };
    assemble(prefix, loop_of, beta)
}
