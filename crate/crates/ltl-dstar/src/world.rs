//! Gridworlds with hidden obstacles and bumps, one-cell sensing, and random
//! benchmark maps.

use std::collections::{BTreeSet, HashSet};

use ltl_dstar_core::automata::{AutomataError, WtsEdge};
use ltl_dstar_core::baselines::dijkstra_oracle;
use ltl_dstar_core::planner::Geometry;
use ltl_dstar_core::{ApUniverse, Nba, ProductAutomaton, Wts, WtsChange};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scenario::{Cell, GridScenario, ScenarioError};

#[derive(Debug, Error)]
pub enum WorldError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("region `{0}` is not a proposition of the automaton")]
    UnknownRegion(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("no feasible map after {0} attempts")]
    RetriesExhausted(usize),
    #[error("density must lie in [0, 1)")]
    InvalidDensity,
    #[error("random maps need at least 4x4 cells")]
    TooSmall,
}

/// Objects the robot has discovered so far. Only ever grows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Belief {
    pub obstacles: BTreeSet<usize>,
    pub bumps: BTreeSet<usize>,
}

/// A revealed change to the robot's transition system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ChangeEvent {
    EdgeDelete { from: usize, to: usize },
    EdgeReweight { from: usize, to: usize, weight: u32 },
}

impl From<ChangeEvent> for WtsChange {
    fn from(e: ChangeEvent) -> Self {
        match e {
            ChangeEvent::EdgeDelete { from, to } => WtsChange::Delete { from, to },
            ChangeEvent::EdgeReweight { from, to, weight } => WtsChange::Reweight { from, to, weight },
        }
    }
}

/// A validated scenario with lookup sets. Every cell is a WTS state, so state
/// indices never shift; a believed obstacle simply has no incoming edges.
#[derive(Debug, Clone)]
pub struct GridWorld {
    scenario: GridScenario,
    walls: HashSet<(usize, usize)>,
    obstacles: HashSet<usize>,
    bumps: HashSet<usize>,
}

impl GridWorld {
    pub fn new(scenario: GridScenario) -> Result<Self, WorldError> {
        scenario.validate()?;
        let walls = scenario.wall_set();
        let obstacles = scenario.obstacles.iter().map(|&c| scenario.index(c)).collect();
        let bumps = scenario.bumps.iter().map(|&c| scenario.index(c)).collect();
        Ok(Self { scenario, walls, obstacles, bumps })
    }

    pub fn scenario(&self) -> &GridScenario {
        &self.scenario
    }

    pub fn start(&self) -> usize {
        self.scenario.index(self.scenario.start)
    }

    pub fn is_obstacle(&self, s: usize) -> bool {
        self.obstacles.contains(&s)
    }

    pub fn is_bump(&self, s: usize) -> bool {
        self.bumps.contains(&s)
    }

    /// 4-neighbours of `s` not separated from it by a wall.
    pub fn neighbours(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        let (w, h) = (self.scenario.width, self.scenario.height);
        let (r, c) = (s / w, s % w);
        let candidates = [
            (r > 0).then(|| s - w),
            (c > 0).then(|| s - 1),
            (c + 1 < w).then(|| s + 1),
            (r + 1 < h).then(|| s + w),
        ];
        candidates.into_iter().flatten().filter(move |&t| !self.walls.contains(&(s.min(t), s.max(t))))
    }

    /// Everything known: the world as it really is.
    pub fn full_belief(&self) -> Belief {
        Belief { obstacles: self.obstacles.iter().copied().collect(), bumps: self.bumps.iter().copied().collect() }
    }

    fn weight_into(&self, belief: &Belief, t: usize) -> u32 {
        if belief.bumps.contains(&t) {
            self.scenario.bump_cost
        } else {
            self.scenario.move_cost
        }
    }

    /// Labels every cell with the regions containing it.
    pub fn labels(&self, aps: &ApUniverse) -> Result<Vec<ltl_dstar_core::Label>, WorldError> {
        let mut bits = vec![0u64; self.scenario.num_cells()];
        for (name, cells) in &self.scenario.regions {
            let ap = aps.index_of(name).ok_or_else(|| WorldError::UnknownRegion(name.clone()))?;
            for &c in cells {
                bits[self.scenario.index(c)] |= 1 << ap;
            }
        }
        Ok(bits.into_iter().map(|b| aps.label_from_bits(b).expect("bits within universe")).collect())
    }

    pub fn to_wts(&self, aps: &ApUniverse, belief: &Belief) -> Result<Wts, WorldError> {
        let labels = self.labels(aps)?;
        let mut edges = Vec::new();
        for s in 0..self.scenario.num_cells() {
            for t in self.neighbours(s) {
                if !belief.obstacles.contains(&t) {
                    edges.push(WtsEdge { from: s, to: t, weight: self.weight_into(belief, t) });
                }
            }
        }
        Ok(Wts::new(aps.clone(), labels, vec![self.start()], edges)?)
    }

    /// Reveals hidden objects next to `position` and returns the resulting
    /// edge changes; empty when nothing new is seen.
    pub fn sense(&self, belief: &mut Belief, position: usize) -> Vec<ChangeEvent> {
        let mut events = Vec::new();
        let around: Vec<usize> = self.neighbours(position).collect();
        for t in around {
            if self.obstacles.contains(&t) && belief.obstacles.insert(t) {
                events.extend(self.neighbours(t).map(|from| ChangeEvent::EdgeDelete { from, to: t }));
            } else if self.bumps.contains(&t) && !belief.bumps.contains(&t) {
                let old = self.weight_into(belief, t);
                belief.bumps.insert(t);
                let weight = self.scenario.bump_cost;
                if weight != old {
                    events.extend(self.neighbours(t).map(|from| ChangeEvent::EdgeReweight { from, to: t, weight }));
                }
            }
        }
        events
    }

    /// Manhattan geometry, or `None` when bumps are cheaper than plain moves
    /// and the estimate would overshoot.
    pub fn geometry(&self) -> Option<Geometry> {
        let s = &self.scenario;
        (s.bump_cost >= s.move_cost).then(|| {
            let cells = (0..s.num_cells()).map(|i| ((i / s.width) as i32, (i % s.width) as i32)).collect();
            Geometry::new(cells, s.move_cost as u64)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomMapConfig {
    pub size: usize,
    /// Obstacle probability per cell of the central square.
    pub density: f64,
    #[serde(default)]
    pub bump_density: f64,
    #[serde(default)]
    pub allow_infeasible: bool,
    #[serde(default = "default_retries")]
    pub max_retries: usize,
}

fn default_retries() -> usize {
    100
}

impl RandomMapConfig {
    pub fn new(size: usize, density: f64) -> Self {
        Self { size, density, bump_density: 0.0, allow_infeasible: false, max_retries: default_retries() }
    }
}

/// Hidden obstacles (and optionally bumps) are scattered over the central
/// square `[n/4, n - n/4)²`; regions `A`..`D` sit at random free cells of the
/// top-left, top-right, bottom-right and bottom-left quadrants, and the robot
/// starts at a random free cell of A's quadrant. Maps are redrawn until the
/// fully known map admits a plain accepting run for `nba`.
pub fn random_map(seed: u64, config: &RandomMapConfig, nba: &Nba) -> Result<GridScenario, WorldError> {
    let n = config.size;
    if n < 4 {
        return Err(WorldError::TooSmall);
    }
    if !(0.0..1.0).contains(&config.density) || !(0.0..1.0).contains(&config.bump_density) {
        return Err(WorldError::InvalidDensity);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi, half) = (n / 4, n - n / 4, n / 2);
    for _ in 0..config.max_retries.max(1) {
        let mut s = GridScenario::empty(n, n, (0, 0));
        let mut blocked = HashSet::new();
        for r in lo..hi {
            for c in lo..hi {
                if rng.random_bool(config.density) {
                    s.obstacles.push((r, c));
                    blocked.insert((r, c));
                } else if rng.random_bool(config.bump_density) {
                    s.bumps.push((r, c));
                }
            }
        }
        let quadrants = [(0, 0), (0, half), (half, half), (half, 0)];
        let free_in = |(r0, c0): Cell, taken: &HashSet<Cell>| -> Vec<Cell> {
            let (r1, c1) = (if r0 == 0 { half } else { n }, if c0 == 0 { half } else { n });
            (r0..r1).flat_map(|r| (c0..c1).map(move |c| (r, c))).filter(|c| !blocked.contains(c) && !taken.contains(c)).collect()
        };
        let mut taken = HashSet::new();
        for (name, q) in ["A", "B", "C", "D"].into_iter().zip(quadrants) {
            let free = free_in(q, &taken);
            let cell = free[rng.random_range(0..free.len())];
            taken.insert(cell);
            s.regions.insert(name.to_string(), vec![cell]);
        }
        s.bumps.retain(|c| !taken.contains(c));
        let free = free_in(quadrants[0], &taken);
        s.start = free[rng.random_range(0..free.len())];
        s.bumps.retain(|&c| c != s.start);

        if config.allow_infeasible || is_feasible(&s, nba)? {
            return Ok(s);
        }
    }
    Err(WorldError::RetriesExhausted(config.max_retries))
}

/// Whether the fully known scenario has a plain accepting run.
pub fn is_feasible(scenario: &GridScenario, nba: &Nba) -> Result<bool, WorldError> {
    let world = GridWorld::new(scenario.clone())?;
    let wts = world.to_wts(nba.aps(), &world.full_belief())?;
    let pa = ProductAutomaton::build(&wts, nba)?;
    Ok(dijkstra_oracle(&pa, pa.initial_states(), 1).best.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aps() -> ApUniverse {
        ApUniverse::new(["A", "B", "C", "D"]).unwrap()
    }

    #[test]
    fn empty_grid_edge_count() {
        let world = GridWorld::new(GridScenario::empty(10, 10, (0, 0))).unwrap();
        let wts = world.to_wts(&aps(), &Belief::default()).unwrap();
        assert_eq!(wts.num_states(), 100);
        assert_eq!(wts.edges().len(), 2 * 2 * 10 * 9);
        assert!(wts.edges().iter().all(|e| e.from != e.to && e.weight == 10));
    }

    #[test]
    fn walls_cut_both_directions() {
        let mut s = GridScenario::empty(3, 3, (0, 0));
        s.walls.push([(0, 0), (0, 1)]);
        let world = GridWorld::new(s).unwrap();
        let wts = world.to_wts(&aps(), &Belief::default()).unwrap();
        assert!(!wts.edges().iter().any(|e| (e.from, e.to) == (0, 1) || (e.from, e.to) == (1, 0)));
        assert_eq!(wts.edges().len(), 2 * 2 * 3 * 2 - 2);
    }

    #[test]
    fn sensing_reveals_once() {
        let mut s = GridScenario::empty(3, 3, (0, 0));
        s.obstacles.push((1, 1));
        s.bumps.push((0, 1));
        let world = GridWorld::new(s).unwrap();
        let mut belief = Belief::default();
        let events = world.sense(&mut belief, 0);
        assert_eq!(
            events,
            [
                ChangeEvent::EdgeReweight { from: 0, to: 1, weight: 50 },
                ChangeEvent::EdgeReweight { from: 2, to: 1, weight: 50 },
                ChangeEvent::EdgeReweight { from: 4, to: 1, weight: 50 },
            ]
        );
        assert!(world.sense(&mut belief, 0).is_empty());
        let events = world.sense(&mut belief, 1);
        assert_eq!(events.len(), 4);
        assert!(events.iter().all(|e| matches!(e, ChangeEvent::EdgeDelete { to: 4, .. })));
        let wts = world.to_wts(&aps(), &belief).unwrap();
        assert!(wts.edges().iter().filter(|e| e.to == 1).all(|e| e.weight == 50));
        assert!(!wts.edges().iter().any(|e| e.to == 4));
    }

    #[test]
    fn unknown_region_is_rejected() {
        let mut s = GridScenario::empty(2, 2, (0, 0));
        s.regions.insert("Z".into(), vec![(1, 1)]);
        let world = GridWorld::new(s).unwrap();
        assert!(matches!(world.to_wts(&aps(), &Belief::default()), Err(WorldError::UnknownRegion(z)) if z == "Z"));
    }
}
