use alloc::vec::Vec;

use hashbrown::HashMap;

use super::nba::{Nba, TransitionTable};
use super::wts::Wts;
use super::AutomataError;
use crate::logic::{ApUniverse, Label};
use crate::search::{SearchGraph, StateId, Weight};

const INFINITE_TRAVEL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductMode {
    /// Only transitions whose label satisfies the NBA guard.
    Plain,
    /// Every NBA transition with a non-empty `χ`, penalised by `Dist`.
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PaEdge {
    from: StateId,
    to: StateId,
    violation: u32,
    travel: u32,
}

impl PaEdge {
    fn weight(&self) -> Weight {
        if self.travel == INFINITE_TRAVEL {
            Weight::INFINITY
        } else {
            Weight::new(self.violation as u64, self.travel as u64)
        }
    }
}

/// A change to the WTS transition relation or its weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WtsChange {
    Add { from: usize, to: usize, weight: u32 },
    Delete { from: usize, to: usize },
    Reweight { from: usize, to: usize, weight: u32 },
}

impl WtsChange {
    pub fn endpoints(&self) -> (usize, usize) {
        match *self {
            WtsChange::Add { from, to, .. }
            | WtsChange::Delete { from, to }
            | WtsChange::Reweight { from, to, .. } => (from, to),
        }
    }
}

/// New weight for one product edge; infinite travel means the edge is deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PaEdgeChange {
    pub from: StateId,
    pub to: StateId,
    pub weight: Weight,
}

/// Product of a WTS and an NBA, stored with successor and predecessor lists.
///
/// State `⟨π, q⟩` has index `π·|Q| + q`. Deleted edges stay in place with
/// infinite weight so that later cost changes can restore them.
#[derive(Debug, Clone)]
pub struct ProductAutomaton {
    mode: ProductMode,
    aps: ApUniverse,
    table: TransitionTable,
    labels: Vec<Label>,
    nba_states: usize,
    accepting_nba: Vec<usize>,
    accepting_pos: Vec<Option<u32>>,
    initial: Vec<StateId>,
    edges: Vec<PaEdge>,
    succ: Vec<Vec<u32>>,
    pred: Vec<Vec<u32>>,
    wts_weights: HashMap<(u32, u32), u32>,
}

impl ProductAutomaton {
    /// Synchronous product: `⟨π_i,q_m⟩ → ⟨π_j,q_n⟩` iff `π_i → π_j` and `q_n ∈ δ(q_m, L(π_j))`.
    pub fn build(wts: &Wts, nba: &Nba) -> Result<Self, AutomataError> {
        Self::build_with_mode(wts, nba, ProductMode::Plain)
    }

    /// Relaxed product: every NBA pair with non-empty `χ` is available, at
    /// violation `Dist(s_m, s_n)` computed against `L(π_j)`.
    pub fn build_relaxed(wts: &Wts, nba: &Nba) -> Result<Self, AutomataError> {
        Self::build_with_mode(wts, nba, ProductMode::Relaxed)
    }

    pub fn build_with_mode(wts: &Wts, nba: &Nba, mode: ProductMode) -> Result<Self, AutomataError> {
        if wts.aps() != nba.aps() {
            return Err(AutomataError::UniverseMismatch { expected: nba.aps().len(), found: wts.aps().len() });
        }
        let q = nba.num_states();
        let num_states = wts.num_states().checked_mul(q).filter(|&n| n < u32::MAX as usize - 2);
        let num_states = num_states.ok_or(AutomataError::ProductTooLarge)?;

        let mut accepting_pos = alloc::vec![None; q];
        for (i, &f) in nba.accepting().iter().enumerate() {
            accepting_pos[f] = Some(i as u32);
        }
        let mut pa = ProductAutomaton {
            mode,
            aps: nba.aps().clone(),
            table: TransitionTable::new(nba),
            labels: wts.labels().to_vec(),
            nba_states: q,
            accepting_nba: nba.accepting().to_vec(),
            accepting_pos,
            initial: Vec::new(),
            edges: Vec::new(),
            succ: alloc::vec![Vec::new(); num_states],
            pred: alloc::vec![Vec::new(); num_states],
            wts_weights: HashMap::with_capacity(wts.edges().len()),
        };
        for &pi in wts.initial() {
            for &q0 in nba.initial() {
                pa.initial.push(pa.state(pi, q0));
            }
        }
        // distinct labels are few, so pair compatibility is memoised per label
        let mut by_label: HashMap<u64, Vec<(usize, usize, u32)>> = HashMap::new();
        for e in wts.edges() {
            pa.wts_weights.insert((e.from as u32, e.to as u32), e.weight);
            let label = pa.labels[e.to].bits();
            if !by_label.contains_key(&label) {
                let mut pairs = Vec::new();
                pa.compatible_pairs(e.to, &mut pairs);
                by_label.insert(label, pairs);
            }
            for &(qm, qn, violation) in &by_label[&label] {
                let (from, to) = (pa.state(e.from, qm), pa.state(e.to, qn));
                pa.push_edge(PaEdge { from, to, violation, travel: e.weight });
            }
        }
        Ok(pa)
    }

    /// NBA pairs `(q_m, q_n, violation)` usable when entering WTS state `to`.
    fn compatible_pairs(&self, to: usize, out: &mut Vec<(usize, usize, u32)>) {
        let label = self.labels[to];
        for p in self.table.pairs() {
            match self.mode {
                ProductMode::Plain => {
                    if p.chi.contains(label) {
                        out.push((p.from, p.to, 0));
                    }
                }
                ProductMode::Relaxed => {
                    if let Some(v) = p.chi.min_distance(label) {
                        out.push((p.from, p.to, v));
                    }
                }
            }
        }
    }

    fn push_edge(&mut self, edge: PaEdge) {
        let id = self.edges.len() as u32;
        self.succ[edge.from as usize].push(id);
        self.pred[edge.to as usize].push(id);
        self.edges.push(edge);
    }

    pub fn mode(&self) -> ProductMode {
        self.mode
    }

    pub fn aps(&self) -> &ApUniverse {
        &self.aps
    }

    pub fn table(&self) -> &TransitionTable {
        &self.table
    }

    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    /// Number of stored edges, including deleted (infinite) ones.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_finite_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.travel != INFINITE_TRAVEL).count()
    }

    pub fn nba_states(&self) -> usize {
        self.nba_states
    }

    pub fn wts_states(&self) -> usize {
        self.labels.len()
    }

    pub fn state(&self, pi: usize, q: usize) -> StateId {
        (pi * self.nba_states + q) as StateId
    }

    pub fn wts_state(&self, s: StateId) -> usize {
        s as usize / self.nba_states
    }

    pub fn nba_state(&self, s: StateId) -> usize {
        s as usize % self.nba_states
    }

    pub fn label(&self, s: StateId) -> Label {
        self.labels[self.wts_state(s)]
    }

    /// `S_0 = Π_init × Q_0`.
    pub fn initial_states(&self) -> &[StateId] {
        &self.initial
    }

    /// Number `w` of accepting product states `Π × F`.
    pub fn num_accepting(&self) -> usize {
        self.wts_states() * self.accepting_nba.len()
    }

    /// Index `k` of an accepting state, stable for the product's lifetime.
    pub fn accepting_index(&self, s: StateId) -> Option<usize> {
        if s as usize >= self.num_states() {
            return None;
        }
        let pos = self.accepting_pos[self.nba_state(s)]? as usize;
        Some(self.wts_state(s) * self.accepting_nba.len() + pos)
    }

    /// The accepting state `s_acc^k`.
    pub fn accepting_state(&self, k: usize) -> StateId {
        let f = self.accepting_nba.len();
        self.state(k / f, self.accepting_nba[k % f])
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_accepting()).map(|k| self.accepting_state(k))
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting_index(s).is_some()
    }

    /// Current travel weight of a WTS edge (`None` if it never existed,
    /// `Some(u32::MAX)` if deleted).
    pub fn wts_weight(&self, from: usize, to: usize) -> Option<u32> {
        self.wts_weights.get(&(from as u32, to as u32)).copied()
    }

    pub fn successors(&self, s: StateId) -> impl Iterator<Item = (StateId, Weight)> + '_ {
        self.succ[s as usize].iter().map(move |&e| {
            let e = &self.edges[e as usize];
            (e.to, e.weight())
        })
    }

    pub fn predecessors(&self, s: StateId) -> impl Iterator<Item = (StateId, Weight)> + '_ {
        self.pred[s as usize].iter().map(move |&e| {
            let e = &self.edges[e as usize];
            (e.from, e.weight())
        })
    }

    /// All edges as `(from, to, weight)`.
    pub fn edges(&self) -> impl Iterator<Item = (StateId, StateId, Weight)> + '_ {
        self.edges.iter().map(|e| (e.from, e.to, e.weight()))
    }

    fn find_edge(&self, from: StateId, to: StateId) -> Option<u32> {
        self.succ[from as usize].iter().copied().find(|&e| self.edges[e as usize].to == to)
    }

    /// Translates a WTS edit into the set of affected product edges.
    ///
    /// Affected pairs follow the product mode: guard-compatible pairs in plain
    /// mode, every pair with non-empty `χ` in relaxed mode.
    pub fn map_wts_change(&self, change: WtsChange) -> Result<Vec<PaEdgeChange>, AutomataError> {
        let (from, to) = change.endpoints();
        let n = self.wts_states();
        for s in [from, to] {
            if s >= n {
                return Err(AutomataError::StateOutOfRange { state: s, states: n });
            }
        }
        let travel = match change {
            WtsChange::Delete { .. } | WtsChange::Reweight { .. } if self.wts_weight(from, to).is_none() => {
                return Err(AutomataError::UnknownEdge { from, to });
            }
            WtsChange::Delete { .. } => INFINITE_TRAVEL,
            WtsChange::Add { weight, .. } | WtsChange::Reweight { weight, .. } => {
                if weight == 0 || weight == INFINITE_TRAVEL {
                    return Err(AutomataError::InvalidWeight { from, to });
                }
                weight
            }
        };
        let mut pairs = Vec::new();
        self.compatible_pairs(to, &mut pairs);
        Ok(pairs
            .into_iter()
            .map(|(qm, qn, violation)| PaEdgeChange {
                from: self.state(from, qm),
                to: self.state(to, qn),
                weight: PaEdge { from: 0, to: 0, violation, travel }.weight(),
            })
            .collect())
    }

    /// Applies product edge changes, inserting edges that do not exist yet.
    pub fn apply_changes(&mut self, changes: &[PaEdgeChange]) -> Result<(), AutomataError> {
        let n = self.num_states();
        for c in changes {
            for s in [c.from, c.to] {
                if s as usize >= n {
                    return Err(AutomataError::StateOutOfRange { state: s as usize, states: n });
                }
            }
            let (violation, travel) = if c.weight.is_infinite() {
                (0, INFINITE_TRAVEL)
            } else {
                let v = u32::try_from(c.weight.violation()).map_err(|_| AutomataError::InvalidWeight {
                    from: c.from as usize,
                    to: c.to as usize,
                })?;
                let t = u32::try_from(c.weight.travel_cost())
                    .ok()
                    .filter(|&t| t != INFINITE_TRAVEL)
                    .ok_or(AutomataError::InvalidWeight { from: c.from as usize, to: c.to as usize })?;
                (v, t)
            };
            match self.find_edge(c.from, c.to) {
                Some(e) => {
                    let edge = &mut self.edges[e as usize];
                    if travel != INFINITE_TRAVEL {
                        edge.violation = violation;
                    }
                    edge.travel = travel;
                }
                None => self.push_edge(PaEdge { from: c.from, to: c.to, violation, travel }),
            }
            let key = (self.wts_state(c.from) as u32, self.wts_state(c.to) as u32);
            self.wts_weights.insert(key, travel);
        }
        Ok(())
    }

    /// Maps and applies a WTS edit in one step, returning the product edge changes.
    pub fn apply_wts_change(&mut self, change: WtsChange) -> Result<Vec<PaEdgeChange>, AutomataError> {
        let mods = self.map_wts_change(change)?;
        self.apply_changes(&mods)?;
        let (from, to) = change.endpoints();
        let travel = match change {
            WtsChange::Delete { .. } => INFINITE_TRAVEL,
            WtsChange::Add { weight, .. } | WtsChange::Reweight { weight, .. } => weight,
        };
        self.wts_weights.insert((from as u32, to as u32), travel);
        Ok(mods)
    }
}

impl SearchGraph for ProductAutomaton {
    fn contains(&self, s: StateId) -> bool {
        (s as usize) < self.num_states()
    }

    fn for_each_successor<F: FnMut(StateId, Weight)>(&self, s: StateId, mut f: F) {
        for &e in &self.succ[s as usize] {
            let e = &self.edges[e as usize];
            f(e.to, e.weight());
        }
    }

    fn for_each_predecessor<F: FnMut(StateId, Weight)>(&self, s: StateId, mut f: F) {
        for &e in &self.pred[s as usize] {
            let e = &self.edges[e as usize];
            f(e.from, e.weight());
        }
    }

    fn edge_weight(&self, from: StateId, to: StateId) -> Option<Weight> {
        self.find_edge(from, to).map(|e| self.edges[e as usize].weight())
    }
}
