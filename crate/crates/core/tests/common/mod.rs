#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ltl_dstar_core::automata::{Guard, NbaTransition, WtsEdge};
use ltl_dstar_core::planner::Geometry;
use ltl_dstar_core::{ApUniverse, Nba, Wts};

pub const MOVE: u32 = 10;
pub const BUMP: u32 = 50;

/// Visit A, B, C, D in order forever; between two targets only the empty
/// label is allowed. Accepting on every arrival at A.
pub fn sequence_abcd() -> Nba {
    let aps = ApUniverse::new(["A", "B", "C", "D"]).unwrap();
    let none = || Guard::cube(&[(0, false), (1, false), (2, false), (3, false)]);
    let t = |from, guard, to| NbaTransition { from, guard, to };
    Nba::new(
        aps,
        6,
        vec![0],
        vec![1],
        vec![
            t(0, Guard::not(Guard::ap(0)), 0),
            t(0, Guard::ap(0), 1),
            t(1, Guard::ap(1), 3),
            t(1, none(), 2),
            t(2, Guard::ap(1), 3),
            t(2, none(), 2),
            t(3, Guard::ap(2), 4),
            t(3, none(), 3),
            t(4, Guard::ap(3), 5),
            t(4, none(), 4),
            t(5, Guard::ap(0), 1),
            t(5, none(), 5),
        ],
    )
    .unwrap()
}

/// 4-connected `n × n` grid; cells are `r * n + c`.
#[derive(Debug, Clone)]
pub struct Grid {
    pub n: usize,
    pub blocked: BTreeSet<usize>,
    pub bumps: BTreeSet<usize>,
    pub regions: BTreeMap<usize, &'static str>,
    pub start: usize,
}

impl Grid {
    pub fn new(n: usize, start: usize) -> Self {
        Self { n, blocked: BTreeSet::new(), bumps: BTreeSet::new(), regions: BTreeMap::new(), start }
    }

    pub fn cell(&self, r: usize, c: usize) -> usize {
        r * self.n + c
    }

    pub fn neighbours(&self, s: usize) -> Vec<usize> {
        let (r, c, n) = (s / self.n, s % self.n, self.n);
        let mut out = Vec::new();
        if r > 0 {
            out.push(s - n);
        }
        if c > 0 {
            out.push(s - 1);
        }
        if c + 1 < n {
            out.push(s + 1);
        }
        if r + 1 < n {
            out.push(s + n);
        }
        out
    }

    pub fn weight_into(&self, s: usize) -> u32 {
        if self.bumps.contains(&s) {
            BUMP
        } else {
            MOVE
        }
    }

    pub fn wts(&self, aps: &ApUniverse) -> Wts {
        let labels = (0..self.n * self.n)
            .map(|s| match self.regions.get(&s) {
                Some(name) => aps.label(&[*name]).unwrap(),
                None => aps.empty_label(),
            })
            .collect();
        let mut edges = Vec::new();
        for s in 0..self.n * self.n {
            for t in self.neighbours(s) {
                if !self.blocked.contains(&t) {
                    edges.push(WtsEdge { from: s, to: t, weight: self.weight_into(t) });
                }
            }
        }
        Wts::new(aps.clone(), labels, vec![self.start], edges).unwrap()
    }

    pub fn geometry(&self) -> Geometry {
        Geometry::new((0..self.n * self.n).map(|s| ((s / self.n) as i32, (s % self.n) as i32)).collect(), MOVE as u64)
    }
}

/// A, B, C, D in the four quadrant corners, start on A.
pub fn corner_regions(n: usize) -> Grid {
    let mut g = Grid::new(n, 0);
    g.regions.insert(g.cell(0, 0), "A");
    g.regions.insert(g.cell(0, n - 1), "B");
    g.regions.insert(g.cell(n - 1, n - 1), "C");
    g.regions.insert(g.cell(n - 1, 0), "D");
    g
}
