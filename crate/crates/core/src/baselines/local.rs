use alloc::vec::Vec;

use super::iterative::IterativeReplanner;
use super::shortest::shortest_from;
use crate::automata::{ProductAutomaton, WtsChange};
use crate::planner::{Execution, PlanError, Position, Replanner, Run};
use crate::search::{SearchGraph, StateId, Weight};

/// Repairs the previous run with the cheapest detour that rejoins it later in
/// the same phase, keeping the accepting state and loop. Falls back to a full
/// replan when no detour exists.
#[derive(Debug, Clone)]
pub struct LocalRevision {
    inner: IterativeReplanner,
    last_expansions: u64,
    fallbacks: u64,
}

impl LocalRevision {
    pub fn new(pa: ProductAutomaton, beta: u64) -> Result<Self, PlanError> {
        Ok(Self { inner: IterativeReplanner::new(pa, beta)?, last_expansions: 0, fallbacks: 0 })
    }

    /// Number of events that needed a full replan.
    pub fn fallbacks(&self) -> u64 {
        self.fallbacks
    }

    /// Replaces the segment after `seq[i]` with the cheapest path from `seq[i]`
    /// to some `seq[j]`, `j > i`, up to the next broken edge, priced as
    /// detour plus the old run from `seq[j]` to that break.
    fn detour(&mut self, seq: &[StateId], i: usize) -> Option<Vec<StateId>> {
        let pa = self.inner.product();
        let last = seq.len() - 1;
        let stop = (i + 1..last)
            .find(|&t| pa.edge_weight(seq[t], seq[t + 1]).is_none_or(|w| w.is_infinite()))
            .unwrap_or(last);
        let sp = shortest_from(pa, pa.num_states(), &[seq[i]]);
        self.last_expansions += sp.settled;
        let mut rest = Weight::ZERO;
        let mut best: Option<(Weight, usize)> = None;
        for j in (i + 1..=stop).rev() {
            if j < stop {
                rest = rest + pa.edge_weight(seq[j], seq[j + 1]).unwrap_or(Weight::INFINITY);
            }
            let reach = sp.dist[seq[j] as usize];
            // a detour of length zero would revisit seq[i] itself
            if seq[j] == seq[i] {
                continue;
            }
            let cost = reach + rest;
            if cost.is_finite() && best.is_none_or(|(b, bj)| (cost, j) <= (b, bj)) {
                best = Some((cost, j));
            }
        }
        let (_, j) = best?;
        let mut out = seq[..i].to_vec();
        out.extend(sp.path_to(seq[j])?);
        out.extend_from_slice(&seq[j + 1..]);
        Some(out)
    }

    /// Detours around every broken edge, front to back.
    fn repair(&mut self, mut seq: Vec<StateId>) -> Option<Vec<StateId>> {
        loop {
            let pa = self.inner.product();
            let broken = seq.windows(2).position(|e| pa.edge_weight(e[0], e[1]).is_none_or(|w| w.is_infinite()));
            match broken {
                None => return Some(seq),
                Some(t) => seq = self.detour(&seq, t)?,
            }
        }
    }

    fn revise(&mut self, execution: &Execution) -> Option<Run> {
        let run = execution.run();
        let remaining = match execution.position() {
            Position::Prefix(i) => run.prefix()[i..].to_vec(),
            Position::Suffix(j) => run.suffix()[j..].to_vec(),
        };
        let prefix = if remaining.len() > 1 { self.detour(&remaining, 0)? } else { remaining };
        let prefix = self.repair(prefix)?;
        let suffix = self.repair(run.suffix().to_vec())?;
        let pa = self.inner.product();
        let k = pa.accepting_index(suffix[0])?;
        let revised = Run::new(pa, prefix, suffix, k, self.inner.beta());
        revised.is_well_formed(pa).then_some(revised)
    }
}

impl Replanner for LocalRevision {
    fn plan_initial(&mut self) -> Result<Run, PlanError> {
        let run = self.inner.plan_initial();
        self.last_expansions = self.inner.last_expansions();
        run
    }

    fn replan(&mut self, changes: &[WtsChange], execution: &Execution) -> Result<Run, PlanError> {
        for &c in changes {
            self.inner.product_mut().apply_wts_change(c)?;
        }
        self.last_expansions = 0;
        if let Some(run) = self.revise(execution) {
            return Ok(run);
        }
        self.fallbacks += 1;
        let run = self.inner.plan_from(Some(execution.current()));
        self.last_expansions += self.inner.last_expansions();
        run
    }

    fn last_expansions(&self) -> u64 {
        self.last_expansions
    }

    fn product(&self) -> &ProductAutomaton {
        self.inner.product()
    }

    fn beta(&self) -> u64 {
        self.inner.beta()
    }
}
