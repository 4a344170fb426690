use super::Run;
use crate::search::StateId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Prefix,
    Suffix,
}

/// Index into the prefix or the loop of the run being executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    Prefix(usize),
    Suffix(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub from: StateId,
    pub to: StateId,
    /// The move ended on the run's accepting state.
    pub reached_accepting: bool,
}

/// A run being followed by the robot. Standing on the accepting state counts
/// as the suffix phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    run: Run,
    position: Position,
}

impl Execution {
    pub fn new(run: Run) -> Self {
        let position = if run.prefix().len() <= 1 { Position::Suffix(0) } else { Position::Prefix(0) };
        Self { run, position }
    }

    pub fn run(&self) -> &Run {
        &self.run
    }

    pub fn position(&self) -> Position {
        self.position
    }

    pub fn phase(&self) -> Phase {
        match self.position {
            Position::Prefix(_) => Phase::Prefix,
            Position::Suffix(_) => Phase::Suffix,
        }
    }

    pub fn current(&self) -> StateId {
        match self.position {
            Position::Prefix(i) => self.run.prefix()[i],
            Position::Suffix(j) => self.run.suffix()[j],
        }
    }

    pub fn next_state(&self) -> StateId {
        match self.position {
            Position::Prefix(i) => self.run.prefix()[i + 1],
            Position::Suffix(j) => self.run.suffix()[j + 1],
        }
    }

    /// Moves one edge along the run, wrapping around the loop.
    pub fn advance(&mut self) -> Step {
        let from = self.current();
        let to = self.next_state();
        let (prefix_len, suffix_len) = (self.run.prefix().len(), self.run.suffix().len());
        self.position = match self.position {
            Position::Prefix(i) if i + 2 >= prefix_len => Position::Suffix(0),
            Position::Prefix(i) => Position::Prefix(i + 1),
            Position::Suffix(j) if j + 2 >= suffix_len => Position::Suffix(0),
            Position::Suffix(j) => Position::Suffix(j + 1),
        };
        Step { from, to, reached_accepting: self.position == Position::Suffix(0) }
    }
}
