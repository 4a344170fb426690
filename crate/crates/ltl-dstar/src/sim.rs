//! Sense, replan, move: the closed loop driving a replanner through a
//! gridworld whose obstacles and bumps are discovered on the way.

use std::time::Instant;

use ltl_dstar_core::baselines::{dijkstra_oracle, IterativeReplanner, LocalRevision};
use ltl_dstar_core::planner::PlannerConfig;
use ltl_dstar_core::{
    Execution, Nba, Phase, PlanError, Planner, ProductAutomaton, ProductMode, Replanner, Run, SearchGraph, StateId,
    Weight, WtsChange,
};
use thiserror::Error;

use crate::trace::{Algorithm, EventPhase, EventRecord, Outcome, PlanMode, TraceReport};
use crate::world::{Belief, GridWorld, WorldError};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    World(#[from] WorldError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("event {event}: relaxed run violates the task although a plain run exists")]
    NeedlessViolation { event: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimConfig {
    pub beta: u64,
    pub mode: PlanMode,
    pub algorithm: Algorithm,
    /// Suffix traversals to complete before stopping.
    pub loops: usize,
    pub max_steps: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { beta: 10, mode: PlanMode::Plain, algorithm: Algorithm::LtlDstar, loops: 1, max_steps: 1_000_000 }
    }
}

/// State handed to an observer after each plan or replan.
pub struct Observation<'a> {
    pub event: usize,
    pub product: &'a ProductAutomaton,
    /// Where the run starts: `None` for the initial plan (all initial states).
    pub current: Option<StateId>,
    pub beta: u64,
    pub result: Result<&'a Run, &'a PlanError>,
}

enum AnyReplanner {
    LtlDstar(Box<Planner>),
    Iterative(IterativeReplanner),
    Local(LocalRevision),
}

impl AnyReplanner {
    fn get(&mut self) -> &mut dyn Replanner {
        match self {
            AnyReplanner::LtlDstar(p) => p.as_mut(),
            AnyReplanner::Iterative(p) => p,
            AnyReplanner::Local(p) => p,
        }
    }

    fn fallbacks(&self) -> u64 {
        match self {
            AnyReplanner::Local(p) => p.fallbacks(),
            _ => 0,
        }
    }
}

fn product_mode(mode: PlanMode) -> ProductMode {
    match mode {
        PlanMode::Plain => ProductMode::Plain,
        PlanMode::Relaxed | PlanMode::Auto => ProductMode::Relaxed,
    }
}

pub fn simulate(world: &GridWorld, nba: &Nba, config: &SimConfig) -> Result<TraceReport, SimError> {
    simulate_observed(world, nba, config, |_| {})
}

/// Runs the loop until `config.loops` suffix traversals are complete, no
/// accepting run remains, or the step budget is spent. Loops are counted as
/// arrivals at an accepting state after the first (every arrival when the
/// robot starts on one).
pub fn simulate_observed(
    world: &GridWorld,
    nba: &Nba,
    config: &SimConfig,
    mut observe: impl FnMut(&Observation<'_>),
) -> Result<TraceReport, SimError> {
    let aps = nba.aps();
    let mut belief = Belief::default();
    world.sense(&mut belief, world.start());
    let wts = world.to_wts(aps, &belief)?;
    let pa = ProductAutomaton::build_with_mode(&wts, nba, product_mode(config.mode)).map_err(PlanError::from)?;
    let mut replanner = match config.algorithm {
        Algorithm::LtlDstar => {
            let cfg = PlannerConfig { beta: config.beta, geometry: world.geometry(), ..PlannerConfig::default() };
            AnyReplanner::LtlDstar(Box::new(Planner::new(pa, cfg)?))
        }
        Algorithm::Iterative => AnyReplanner::Iterative(IterativeReplanner::new(pa, config.beta)?),
        Algorithm::LocalRevision => AnyReplanner::Local(LocalRevision::new(pa, config.beta)?),
    };

    let mut report = TraceReport {
        algorithm: config.algorithm,
        mode: config.mode,
        beta: config.beta,
        outcome: Outcome::Completed,
        steps: 0,
        loops_completed: 0,
        traversed_violation: 0,
        traversed_travel: 0,
        fallbacks: 0,
        path: vec![world.start()],
        events: Vec::new(),
    };

    let clock = Instant::now();
    let result = replanner.get().plan_initial();
    let wall = clock.elapsed().as_nanos() as u64;
    let mut execution = match record(&mut report, &mut replanner, &mut observe, None, EventPhase::Initial, 0, wall, result) {
        Some(run) => Execution::new(run),
        None => {
            report.outcome = Outcome::Infeasible;
            return Ok(report);
        }
    };
    check_auto(config, world, nba, &belief, None, &execution, 0)?;
    let started_on_accepting = execution.phase() == Phase::Suffix;
    let mut arrivals = 0usize;
    let mut traversed = Weight::ZERO;

    loop {
        report.loops_completed = if started_on_accepting { arrivals } else { arrivals.saturating_sub(1) };
        if report.loops_completed >= config.loops {
            break;
        }
        if report.steps >= config.max_steps {
            report.outcome = Outcome::StepLimit;
            break;
        }
        let step = execution.advance();
        let pa = replanner.get().product();
        traversed = traversed + pa.edge_weight(step.from, step.to).unwrap_or(Weight::INFINITY);
        let position = pa.wts_state(step.to);
        report.steps += 1;
        report.path.push(position);
        if step.reached_accepting {
            arrivals += 1;
        }

        let events = world.sense(&mut belief, position);
        if events.is_empty() {
            continue;
        }
        let changes: Vec<WtsChange> = events.into_iter().map(Into::into).collect();
        let mod_size = changes
            .iter()
            .map(|&c| pa.map_wts_change(c).map(|m| m.len()).unwrap_or(0))
            .sum();
        let phase = match execution.phase() {
            Phase::Prefix => EventPhase::Prefix,
            Phase::Suffix => EventPhase::Suffix,
        };
        let clock = Instant::now();
        let result = replanner.get().replan(&changes, &execution);
        let wall = clock.elapsed().as_nanos() as u64;
        let current = execution.current();
        let event = report.events.len();
        match record(&mut report, &mut replanner, &mut observe, Some(current), phase, mod_size, wall, result) {
            Some(run) => execution = Execution::new(run),
            None => {
                report.outcome = Outcome::Infeasible;
                break;
            }
        }
        check_auto(config, world, nba, &belief, Some(current), &execution, event)?;
    }
    report.traversed_violation = traversed.violation();
    report.traversed_travel = traversed.travel_cost();
    report.fallbacks = replanner.fallbacks();
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn record(
    report: &mut TraceReport,
    replanner: &mut AnyReplanner,
    observe: &mut impl FnMut(&Observation<'_>),
    current: Option<StateId>,
    phase: EventPhase,
    mod_size: usize,
    wall_time_ns: u64,
    result: Result<Run, PlanError>,
) -> Option<Run> {
    let r = replanner.get();
    let event = report.events.len();
    let total = result.as_ref().ok().map(|run| run.total());
    log::debug!(
        "event {event} ({phase:?}): {mod_size} product edges changed, {wall_time_ns} ns, total {}",
        total.map_or_else(|| "none".into(), |w| w.to_string())
    );
    report.events.push(EventRecord {
        event,
        phase,
        mod_size,
        wall_time_ns,
        expansions: r.last_expansions(),
        total_violation: total.map(Weight::violation),
        total_travel: total.map(Weight::travel_cost),
    });
    observe(&Observation { event, product: r.product(), current, beta: r.beta(), result: result.as_ref() });
    result.ok()
}

/// In auto mode a violating run is only acceptable when the plain product
/// has no accepting run from the same state.
fn check_auto(
    config: &SimConfig,
    world: &GridWorld,
    nba: &Nba,
    belief: &Belief,
    current: Option<StateId>,
    execution: &Execution,
    event: usize,
) -> Result<(), SimError> {
    if config.mode != PlanMode::Auto || execution.run().total().violation() == 0 {
        return Ok(());
    }
    let plain = ProductAutomaton::build(&world.to_wts(nba.aps(), belief)?, nba).map_err(PlanError::from)?;
    let starts = match current {
        Some(s) => vec![s],
        None => plain.initial_states().to_vec(),
    };
    if dijkstra_oracle(&plain, &starts, config.beta).best.is_some() {
        return Err(SimError::NeedlessViolation { event });
    }
    Ok(())
}
