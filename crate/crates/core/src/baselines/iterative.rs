use alloc::vec::Vec;

use super::shortest::{greedy_path, shortest_to};
use crate::automata::{ProductAutomaton, WtsChange};
use crate::planner::{Execution, MainView, PlanError, Replanner, Run, SuffixView};
use crate::search::{StateId, Weight};

/// Replans from scratch with Dijkstra on every event: all loops, then the
/// prefix to the global imaginary goal.
#[derive(Debug, Clone)]
pub struct IterativeReplanner {
    pa: ProductAutomaton,
    beta: u64,
    last_expansions: u64,
}

impl IterativeReplanner {
    pub fn new(pa: ProductAutomaton, beta: u64) -> Result<Self, PlanError> {
        if beta == 0 {
            return Err(PlanError::InvalidBeta);
        }
        Ok(Self { pa, beta, last_expansions: 0 })
    }

    pub(crate) fn product_mut(&mut self) -> &mut ProductAutomaton {
        &mut self.pa
    }

    /// Optimal run from `start`, or from all initial states when `None`.
    pub fn plan_from(&mut self, start: Option<StateId>) -> Result<Run, PlanError> {
        let pa = &self.pa;
        let n = pa.num_states();
        self.last_expansions = 0;
        let mut cycles: Vec<Vec<StateId>> = Vec::with_capacity(pa.num_accepting());
        let mut costs = Vec::with_capacity(pa.num_accepting());
        for k in 0..pa.num_accepting() {
            let acc = pa.accepting_state(k);
            if pa.predecessors(acc).all(|(_, w)| w.is_infinite()) {
                cycles.push(Vec::new());
                costs.push(Weight::INFINITY);
                continue;
            }
            let view = SuffixView::new(pa, acc);
            let sp = shortest_to(&view, n + 1, view.img());
            self.last_expansions += sp.settled;
            let mut cycle = greedy_path(&view, &sp.dist, acc, view.img()).unwrap_or_default();
            if let Some(last) = cycle.last_mut() {
                *last = acc;
            }
            costs.push(sp.dist[acc as usize].scale(self.beta));
            cycles.push(cycle);
        }

        let synthetic = (start.is_none() && pa.initial_states().len() > 1).then(|| MainView::synthetic_id(pa));
        let from = match (start, synthetic, pa.initial_states()) {
            (Some(s), _, _) => s,
            (None, Some(s), _) => s,
            (None, None, [s]) => *s,
            _ => return Err(PlanError::NoAcceptingRun),
        };
        let view = MainView::new(pa, &costs, synthetic);
        let sp = shortest_to(&view, n + 2, view.img());
        self.last_expansions += sp.settled;
        let mut path = greedy_path(&view, &sp.dist, from, view.img()).ok_or(PlanError::NoAcceptingRun)?;
        path.pop();
        if synthetic.is_some() {
            path.remove(0);
        }
        let acc = *path.last().ok_or(PlanError::NoAcceptingRun)?;
        let k = pa.accepting_index(acc).ok_or(PlanError::NoAcceptingRun)?;
        Ok(Run::new(pa, path, core::mem::take(&mut cycles[k]), k, self.beta))
    }
}

impl Replanner for IterativeReplanner {
    fn plan_initial(&mut self) -> Result<Run, PlanError> {
        self.plan_from(None)
    }

    fn replan(&mut self, changes: &[WtsChange], execution: &Execution) -> Result<Run, PlanError> {
        for &c in changes {
            self.pa.apply_wts_change(c)?;
        }
        self.plan_from(Some(execution.current()))
    }

    fn last_expansions(&self) -> u64 {
        self.last_expansions
    }

    fn product(&self) -> &ProductAutomaton {
        &self.pa
    }

    fn beta(&self) -> u64 {
        self.beta
    }
}
