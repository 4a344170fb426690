use alloc::vec::Vec;

use super::heuristic::{Geometry, ProductHeuristic};
use super::suffix::SuffixRecord;
use super::views::MainView;
use super::{Execution, Phase, PlanError, Replanner, Run};
use crate::automata::{PaEdgeChange, ProductAutomaton, WtsChange};
use crate::search::{SearchInstance, StateId, Weight};

/// What the main search does when an event arrives during the suffix phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SuffixPhasePolicy {
    /// Discard the main search and start a fresh one from the current state.
    #[default]
    Reinitialize,
    /// Keep the main search and shift `k_m`, as in the prefix phase.
    Continue,
}

#[derive(Debug, Clone)]
pub struct PlannerConfig {
    /// Suffix weighting in `cost_pre + β ⊙ cost_suf`; at least 1.
    pub beta: u64,
    /// Cell positions for the Manhattan heuristic; `None` means `h ≡ 0`.
    pub geometry: Option<Geometry>,
    pub suffix_phase: SuffixPhasePolicy,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self { beta: 10, geometry: None, suffix_phase: SuffixPhasePolicy::default() }
    }
}

type MainSearch = SearchInstance<ProductHeuristic>;

/// LTL-D*: incremental optimal replanning of prefix-suffix runs.
#[derive(Debug, Clone)]
pub struct Planner {
    pa: ProductAutomaton,
    beta: u64,
    policy: SuffixPhasePolicy,
    heuristic: ProductHeuristic,
    records: Vec<SuffixRecord>,
    /// `β ⊙ cost_k` per accepting state.
    costs: Vec<Weight>,
    /// Records whose search extends past the imaginary goal.
    live: Vec<usize>,
    main: Option<MainSearch>,
    synthetic: Option<StateId>,
    last_expansions: u64,
}

impl Planner {
    pub fn new(pa: ProductAutomaton, config: PlannerConfig) -> Result<Self, PlanError> {
        if config.beta == 0 {
            return Err(PlanError::InvalidBeta);
        }
        let heuristic = ProductHeuristic::new(&pa, config.geometry);
        let synthetic = (pa.initial_states().len() > 1).then(|| MainView::synthetic_id(&pa));
        Ok(Self {
            pa,
            beta: config.beta,
            policy: config.suffix_phase,
            heuristic,
            records: Vec::new(),
            costs: Vec::new(),
            live: Vec::new(),
            main: None,
            synthetic,
            last_expansions: 0,
        })
    }

    pub fn product(&self) -> &ProductAutomaton {
        &self.pa
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn records(&self) -> &[SuffixRecord] {
        &self.records
    }

    pub fn main_instance(&self) -> Option<&SearchInstance<ProductHeuristic>> {
        self.main.as_ref()
    }

    pub fn heuristic(&self) -> &ProductHeuristic {
        &self.heuristic
    }

    pub fn last_expansions(&self) -> u64 {
        self.last_expansions
    }

    /// Builds every suffix record, wires the imaginary goal and searches from
    /// the initial states.
    pub fn plan_initial(&mut self) -> Result<Run, PlanError> {
        let start = match (self.synthetic, self.pa.initial_states()) {
            (Some(s), _) => s,
            (None, [s]) => *s,
            _ => return Err(PlanError::NoAcceptingRun),
        };
        self.records = (0..self.pa.num_accepting()).map(|k| SuffixRecord::initialize(&self.pa, k)).collect();
        self.last_expansions = 0;
        for r in &mut self.records {
            self.last_expansions += r.take_expansions();
        }
        self.costs = self.records.iter().map(|r| r.cost().scale(self.beta)).collect();
        self.live = (0..self.records.len()).filter(|&k| !self.records[k].is_dormant()).collect();

        let view = MainView::new(&self.pa, &self.costs, self.synthetic);
        let mut main = SearchInstance::initialize(&view, start, view.img(), self.heuristic.clone())?;
        main.compute_shortest_path(&view);
        self.last_expansions += main.stats().expansions;
        main.reset_stats();
        self.main = Some(main);
        self.extract_run()
    }

    /// Applies WTS changes to the product and replans from the execution's
    /// current state.
    pub fn replan(&mut self, changes: &[WtsChange], execution: &Execution) -> Result<Run, PlanError> {
        if self.main.is_none() {
            return Err(PlanError::NotPlanned);
        }
        let mut mods = Vec::new();
        for &change in changes {
            mods.extend(self.pa.apply_wts_change(change)?);
        }
        self.replan_product(&mods, execution.current(), execution.phase())
    }

    /// Replans after `mods` have been applied to the product, with the robot
    /// at `current` in `phase`.
    pub fn replan_product(&mut self, mods: &[PaEdgeChange], current: StateId, phase: Phase) -> Result<Run, PlanError> {
        let Some(mut main) = self.main.take() else { return Err(PlanError::NotPlanned) };
        self.last_expansions = 0;

        let mut touched = self.live.clone();
        for m in mods {
            if let Some(k) = self.pa.accepting_index(m.to) {
                touched.push(k);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut changed_goal_edges = Vec::new();
        self.live.clear();
        for k in touched {
            let record = &mut self.records[k];
            if record.replan(&self.pa, mods) {
                self.costs[k] = record.cost().scale(self.beta);
                changed_goal_edges.push(k);
            }
            self.last_expansions += record.take_expansions();
            if !record.is_dormant() {
                self.live.push(k);
            }
        }

        let view = MainView::new(&self.pa, &self.costs, self.synthetic);
        if phase == Phase::Suffix && self.policy == SuffixPhasePolicy::Reinitialize {
            main = SearchInstance::initialize(&view, current, view.img(), self.heuristic.clone())?;
        } else {
            main.move_start(current);
            let img = view.img();
            let mut edges: Vec<(StateId, StateId)> =
                changed_goal_edges.iter().map(|&k| (self.pa.accepting_state(k), img)).collect();
            edges.extend(mods.iter().map(|m| (m.from, m.to)));
            main.apply_edge_changes(&view, &edges, 0)?;
        }
        main.compute_shortest_path(&view);
        self.last_expansions += main.stats().expansions;
        main.reset_stats();
        self.main = Some(main);
        self.extract_run()
    }

    fn extract_run(&self) -> Result<Run, PlanError> {
        let main = self.main.as_ref().ok_or(PlanError::NotPlanned)?;
        let start = main.start();
        if main.g(start).is_infinite() {
            return Err(PlanError::NoAcceptingRun);
        }
        let view = MainView::new(&self.pa, &self.costs, self.synthetic);
        let mut path = main.extract_path(&view, start)?;
        path.pop();
        if self.synthetic.is_some_and(|s| path.first() == Some(&s)) {
            path.remove(0);
        }
        let acc = *path.last().ok_or(PlanError::NoAcceptingRun)?;
        let k = self.pa.accepting_index(acc).ok_or(PlanError::NoAcceptingRun)?;
        let cycle = self.records[k].cycle().to_vec();
        Ok(Run::new(&self.pa, path, cycle, k, self.beta))
    }
}

impl Replanner for Planner {
    fn plan_initial(&mut self) -> Result<Run, PlanError> {
        Planner::plan_initial(self)
    }

    fn replan(&mut self, changes: &[WtsChange], execution: &Execution) -> Result<Run, PlanError> {
        Planner::replan(self, changes, execution)
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
