use alloc::vec::Vec;

use super::AutomataError;
use crate::logic::{ApUniverse, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WtsEdge {
    pub from: usize,
    pub to: usize,
    /// Traversal time; strictly positive.
    pub weight: u32,
}

/// Weighted transition system: the robot's workspace abstraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wts {
    aps: ApUniverse,
    labels: Vec<Label>,
    initial: Vec<usize>,
    edges: Vec<WtsEdge>,
}

impl Wts {
    pub fn new(
        aps: ApUniverse,
        labels: Vec<Label>,
        initial: Vec<usize>,
        edges: Vec<WtsEdge>,
    ) -> Result<Self, AutomataError> {
        let n = labels.len();
        let check = |s: usize| {
            if s < n {
                Ok(())
            } else {
                Err(AutomataError::StateOutOfRange { state: s, states: n })
            }
        };
        if let Some(l) = labels.iter().find(|l| l.width() != aps.len()) {
            return Err(AutomataError::UniverseMismatch { expected: aps.len(), found: l.width() });
        }
        initial.iter().try_for_each(|&s| check(s))?;
        let mut seen = hashbrown::HashSet::with_capacity(edges.len());
        for e in &edges {
            check(e.from)?;
            check(e.to)?;
            if e.weight == 0 || e.weight == u32::MAX {
                return Err(AutomataError::InvalidWeight { from: e.from, to: e.to });
            }
            if !seen.insert((e.from, e.to)) {
                return Err(AutomataError::DuplicateEdge { from: e.from, to: e.to });
            }
        }
        Ok(Self { aps, labels, initial, edges })
    }

    pub fn aps(&self) -> &ApUniverse {
        &self.aps
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, state: usize) -> Label {
        self.labels[state]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn edges(&self) -> &[WtsEdge] {
        &self.edges
    }
}
