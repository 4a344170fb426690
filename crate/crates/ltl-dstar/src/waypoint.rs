//! Waypoint-graph transition systems in JSON:
//! `{states: [{id, label: [ap, ...]}], init: [id, ...], edges: [{from, to, weight}]}`.

use std::collections::HashMap;

use ltl_dstar_core::automata::{AutomataError, WtsEdge};
use ltl_dstar_core::{ApUniverse, Wts};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WaypointError {
    #[error("malformed waypoint graph: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate waypoint id `{0}`")]
    DuplicateId(String),
    #[error("unknown waypoint id `{0}`")]
    UnknownId(String),
    #[error("waypoint `{id}` uses proposition `{ap}` which the automaton does not declare")]
    UnknownProposition { id: String, ap: String },
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

/// Ids may be written as strings or integers; both are compared as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WaypointId {
    Number(u64),
    Name(String),
}

impl WaypointId {
    fn key(&self) -> String {
        match self {
            WaypointId::Number(n) => n.to_string(),
            WaypointId::Name(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Waypoint {
    pub id: WaypointId,
    #[serde(default)]
    pub label: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaypointEdge {
    pub from: WaypointId,
    pub to: WaypointId,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaypointGraph {
    pub states: Vec<Waypoint>,
    pub init: Vec<WaypointId>,
    pub edges: Vec<WaypointEdge>,
}

impl WaypointGraph {
    pub fn from_json(text: &str) -> Result<Self, WaypointError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the WTS over `aps`; waypoint `i` in file order becomes state `i`.
    pub fn to_wts(&self, aps: &ApUniverse) -> Result<Wts, WaypointError> {
        let mut index = HashMap::with_capacity(self.states.len());
        let mut labels = Vec::with_capacity(self.states.len());
        for (i, w) in self.states.iter().enumerate() {
            let id = w.id.key();
            if aps.label(&w.label).is_err() {
                let ap = w.label.iter().find(|a| aps.index_of(a).is_none()).cloned().unwrap_or_default();
                return Err(WaypointError::UnknownProposition { id, ap });
            }
            labels.push(aps.label(&w.label).expect("checked above"));
            if index.insert(id.clone(), i).is_some() {
                return Err(WaypointError::DuplicateId(id));
            }
        }
        let lookup = |id: &WaypointId| index.get(&id.key()).copied().ok_or_else(|| WaypointError::UnknownId(id.key()));
        let init = self.init.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(WtsEdge { from: lookup(&e.from)?, to: lookup(&e.to)?, weight: e.weight }))
            .collect::<Result<Vec<_>, WaypointError>>()?;
        Ok(Wts::new(aps.clone(), labels, init, edges)?)
    }

    pub fn names(&self) -> Vec<String> {
        self.states.iter().map(|w| w.id.key()).collect()
    }
}
