//! Grid scenario files.
//!
//! Cells are `[row, col]`; a cell's WTS index is `row * width + col`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Cell = (usize, usize);

pub const DEFAULT_MOVE_COST: u32 = 10;
pub const DEFAULT_BUMP_COST: u32 = 50;

fn default_move_cost() -> u32 {
    DEFAULT_MOVE_COST
}

fn default_bump_cost() -> u32 {
    DEFAULT_BUMP_COST
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed scenario: {0}")]
    Json(#[from] serde_json::Error),
    #[error("grid must be at least 1x1")]
    Empty,
    #[error("cell [{0}, {1}] is outside the grid")]
    OutOfBounds(usize, usize),
    #[error("wall between [{0}, {1}] and [{2}, {3}] does not separate adjacent cells")]
    NonAdjacentWall(usize, usize, usize, usize),
    #[error("start cell is an obstacle")]
    StartBlocked,
    #[error("region {0} overlaps an obstacle")]
    RegionOnObstacle(String),
    #[error("cell [{0}, {1}] is both an obstacle and a bump")]
    ObstacleBump(usize, usize),
    #[error("movement costs must be positive")]
    ZeroCost,
}

/// A gridworld with known walls and hidden obstacles and bumps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridScenario {
    pub width: usize,
    pub height: usize,
    #[serde(default)]
    pub walls: Vec<[Cell; 2]>,
    #[serde(default)]
    pub obstacles: Vec<Cell>,
    #[serde(default)]
    pub bumps: Vec<Cell>,
    #[serde(default)]
    pub regions: BTreeMap<String, Vec<Cell>>,
    pub start: Cell,
    #[serde(default = "default_move_cost")]
    pub move_cost: u32,
    #[serde(default = "default_bump_cost")]
    pub bump_cost: u32,
}

impl GridScenario {
    pub fn empty(width: usize, height: usize, start: Cell) -> Self {
        Self {
            width,
            height,
            walls: Vec::new(),
            obstacles: Vec::new(),
            bumps: Vec::new(),
            regions: BTreeMap::new(),
            start,
            move_cost: DEFAULT_MOVE_COST,
            bump_cost: DEFAULT_BUMP_COST,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let s: Self = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialises")
    }

    pub fn num_cells(&self) -> usize {
        self.width * self.height
    }

    pub fn index(&self, (r, c): Cell) -> usize {
        r * self.width + c
    }

    pub fn cell(&self, index: usize) -> Cell {
        (index / self.width, index % self.width)
    }

    pub fn in_bounds(&self, (r, c): Cell) -> bool {
        r < self.height && c < self.width
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.width == 0 || self.height == 0 {
            return Err(ScenarioError::Empty);
        }
        if self.move_cost == 0 || self.bump_cost == 0 {
            return Err(ScenarioError::ZeroCost);
        }
        let check = |c: Cell| if self.in_bounds(c) { Ok(()) } else { Err(ScenarioError::OutOfBounds(c.0, c.1)) };
        check(self.start)?;
        for &[a, b] in &self.walls {
            check(a)?;
            check(b)?;
            if a.0.abs_diff(b.0) + a.1.abs_diff(b.1) != 1 {
                return Err(ScenarioError::NonAdjacentWall(a.0, a.1, b.0, b.1));
            }
        }
        let obstacles: BTreeSet<Cell> = self.obstacles.iter().copied().collect();
        for &c in self.obstacles.iter().chain(&self.bumps) {
            check(c)?;
        }
        if let Some(&c) = self.bumps.iter().find(|c| obstacles.contains(c)) {
            return Err(ScenarioError::ObstacleBump(c.0, c.1));
        }
        if obstacles.contains(&self.start) {
            return Err(ScenarioError::StartBlocked);
        }
        for (name, cells) in &self.regions {
            for &c in cells {
                check(c)?;
                if obstacles.contains(&c) {
                    return Err(ScenarioError::RegionOnObstacle(name.clone()));
                }
            }
        }
        Ok(())
    }

    /// Wall boundaries as unordered index pairs `(min, max)`.
    pub fn wall_set(&self) -> HashSet<(usize, usize)> {
        self.walls
            .iter()
            .map(|&[a, b]| {
                let (a, b) = (self.index(a), self.index(b));
                (a.min(b), a.max(b))
            })
            .collect()
    }
}
