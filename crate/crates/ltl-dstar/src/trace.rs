//! Simulation traces: a JSON report and a CSV with one row per plan or replan.

use std::io;

use serde::{Deserialize, Serialize};

/// Frozen CSV column order.
pub const TRACE_CSV_HEADER: &str = "event,phase,mod_size,wall_time_ns,expansions,total_violation,total_travel";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    LtlDstar,
    Iterative,
    LocalRevision,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::LtlDstar => "ltl-dstar",
            Algorithm::Iterative => "iterative",
            Algorithm::LocalRevision => "local-revision",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanMode {
    Plain,
    Relaxed,
    /// Relaxed search, with a check that no violation is accepted while the
    /// plain product still has an accepting run.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventPhase {
    Initial,
    Prefix,
    Suffix,
}

/// One plan or replan. Totals are empty when no accepting run exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub event: usize,
    pub phase: EventPhase,
    /// Product edges whose weight changed.
    pub mod_size: usize,
    pub wall_time_ns: u64,
    pub expansions: u64,
    pub total_violation: Option<u64>,
    pub total_travel: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Completed,
    /// No accepting run remained; the robot stopped where it was.
    Infeasible,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub algorithm: Algorithm,
    pub mode: PlanMode,
    pub beta: u64,
    pub outcome: Outcome,
    pub steps: usize,
    pub loops_completed: usize,
    /// Sum of the product edge weights actually executed.
    pub traversed_violation: u64,
    pub traversed_travel: u64,
    /// Local revisions that had to fall back to a full replan.
    pub fallbacks: u64,
    /// WTS states visited, starting cell first.
    pub path: Vec<usize>,
    pub events: Vec<EventRecord>,
}

impl TraceReport {
    /// Replan events, excluding the initial plan.
    pub fn replans(&self) -> impl Iterator<Item = &EventRecord> {
        self.events.iter().filter(|e| e.phase != EventPhase::Initial)
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if self.events.is_empty() {
            w.write_record(TRACE_CSV_HEADER.split(','))?;
        }
        for e in &self.events {
            w.serialize(e)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: io::Read>(input: R) -> csv::Result<Vec<EventRecord>> {
        csv::Reader::from_reader(input).deserialize().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(events: Vec<EventRecord>) -> TraceReport {
        TraceReport {
            algorithm: Algorithm::LtlDstar,
            mode: PlanMode::Plain,
            beta: 10,
            outcome: Outcome::Completed,
            steps: 0,
            loops_completed: 0,
            traversed_violation: 0,
            traversed_travel: 0,
            fallbacks: 0,
            path: vec![0],
            events,
        }
    }

    #[test]
    fn csv_header_is_stable_and_round_trips() {
        let events = vec![
            EventRecord {
                event: 0,
                phase: EventPhase::Initial,
                mod_size: 0,
                wall_time_ns: 1200,
                expansions: 40,
                total_violation: Some(0),
                total_travel: Some(380),
            },
            EventRecord {
                event: 1,
                phase: EventPhase::Suffix,
                mod_size: 9,
                wall_time_ns: 300,
                expansions: 7,
                total_violation: None,
                total_travel: None,
            },
        ];
        for r in [report(events.clone()), report(Vec::new())] {
            let mut buf = Vec::new();
            r.write_csv(&mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            assert_eq!(text.lines().next(), Some(TRACE_CSV_HEADER));
            assert_eq!(TraceReport::read_csv(text.as_bytes()).unwrap(), r.events);
        }
        let mut buf = Vec::new();
        report(events).write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("1,suffix,9,300,7,,\n"));
    }
}
