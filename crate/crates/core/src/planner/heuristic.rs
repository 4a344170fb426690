use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::automata::ProductAutomaton;
use crate::search::{Heuristic, StateId};

/// Lattice positions of transition-system states and the cost of one unit
/// step, for Manhattan estimates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    cells: Arc<[(i32, i32)]>,
    unit: u64,
}

impl Geometry {
    pub fn new(cells: Vec<(i32, i32)>, unit: u64) -> Self {
        Self { cells: cells.into(), unit }
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn cell(&self, wts_state: usize) -> (i32, i32) {
        self.cells[wts_state]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `unit · |Δrow| + unit · |Δcol|`.
    pub fn distance(&self, a: usize, b: usize) -> u64 {
        let (p, q) = (self.cells[a], self.cells[b]);
        let steps = p.0.abs_diff(q.0) as u64 + p.1.abs_diff(q.1) as u64;
        steps.saturating_mul(self.unit)
    }

    /// Whether every finite product edge costs at least the estimate between
    /// its endpoints. Together with the triangle inequality of the Manhattan
    /// metric this makes `h(start, ·)` consistent for every start.
    pub fn is_consistent_with(&self, pa: &ProductAutomaton) -> bool {
        self.cells.len() == pa.wts_states()
            && pa.edges().all(|(a, b, w)| {
                w.is_infinite() || self.distance(pa.wts_state(a), pa.wts_state(b)) <= w.travel_cost()
            })
    }
}

/// Travel estimate over the planner's main graph: Manhattan distance between
/// the underlying cells, zero into the imaginary goal.
///
/// The synthetic start (if any) sits at distance `min` over the initial cells
/// when it is the search start, and `max` when it is the target. Both keep the
/// estimate consistent across its zero-weight edges.
#[derive(Debug, Clone)]
pub struct ProductHeuristic {
    geometry: Option<Geometry>,
    nba_states: u32,
    img: StateId,
    initial_wts: Arc<[usize]>,
}

impl ProductHeuristic {
    pub fn new(pa: &ProductAutomaton, geometry: Option<Geometry>) -> Self {
        let mut initial_wts: Vec<usize> = pa.initial_states().iter().map(|&s| pa.wts_state(s)).collect();
        initial_wts.sort_unstable();
        initial_wts.dedup();
        Self {
            geometry,
            nba_states: pa.nba_states() as u32,
            img: pa.num_states() as StateId,
            initial_wts: initial_wts.into(),
        }
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        self.geometry.as_ref()
    }

    fn synthetic(&self) -> StateId {
        self.img + 1
    }

    fn cell(&self, s: StateId) -> usize {
        (s / self.nba_states) as usize
    }
}

impl Heuristic for ProductHeuristic {
    fn estimate(&self, from: StateId, to: StateId) -> u64 {
        let Some(geo) = &self.geometry else { return 0 };
        if to == self.img || from == self.img || from == to {
            return 0;
        }
        let synthetic = self.synthetic();
        let from_initial = || self.initial_wts.iter().map(|&c| geo.distance(c, self.cell(to)));
        let to_initial = || self.initial_wts.iter().map(|&c| geo.distance(self.cell(from), c));
        match (from == synthetic, to == synthetic) {
            (true, _) => from_initial().min().unwrap_or(0),
            (_, true) => to_initial().max().unwrap_or(0),
            _ => geo.distance(self.cell(from), self.cell(to)),
        }
    }
}
