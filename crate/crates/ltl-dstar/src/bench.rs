//! Benchmark sweeps over random maps: per-replan time quartiles and the
//! cost of finishing the task loop, per (size, seed, algorithm).

use std::collections::BTreeMap;
use std::io;
use std::path::PathBuf;

use ltl_dstar_core::Nba;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sim::{simulate, SimConfig};
use crate::trace::{Algorithm, Outcome, PlanMode};
use crate::world::{random_map, GridWorld, RandomMapConfig};

/// Frozen column order of the per-run CSV.
pub const BENCH_CSV_HEADER: &str = "size,seed,algorithm,status,replans,time_lower_ns,time_q1_ns,time_median_ns,\
time_q3_ns,time_upper_ns,expansions,loop_violation,loop_travel,speedup";

/// Frozen column order of the per-(size, algorithm) summary CSV.
pub const SUMMARY_CSV_HEADER: &str =
    "size,algorithm,runs,failed,mean_loop_violation,mean_loop_travel,median_time_ns,speedup";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("malformed bench config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid bench config: {0}")]
    Invalid(&'static str),
}

fn default_beta() -> u64 {
    10
}

fn default_loops() -> usize {
    1
}

fn default_mode() -> PlanMode {
    PlanMode::Plain
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub density: f64,
    #[serde(default)]
    pub bump_density: f64,
    #[serde(default = "default_beta")]
    pub beta: u64,
    #[serde(default = "default_mode")]
    pub mode: PlanMode,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_loops")]
    pub loops: usize,
    /// Per-run CSV; the summary goes next to it with a `.summary.csv` suffix.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// HOA automaton; the A-B-C-D sequencing task when absent.
    #[serde(default)]
    pub nba: Option<PathBuf>,
}

impl BenchConfig {
    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let c: Self = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.algorithms.is_empty() {
            return Err(BenchError::Invalid("algorithm list is empty"));
        }
        if self.sizes.is_empty() || self.seeds.is_empty() {
            return Err(BenchError::Invalid("sizes and seeds must be non-empty"));
        }
        if self.sizes.iter().any(|&n| n < 4) {
            return Err(BenchError::Invalid("sizes must be at least 4"));
        }
        if self.beta == 0 {
            return Err(BenchError::Invalid("beta must be at least 1"));
        }
        if !(0.0..1.0).contains(&self.density) || !(0.0..1.0).contains(&self.bump_density) {
            return Err(BenchError::Invalid("densities must lie in [0, 1)"));
        }
        Ok(())
    }
}

/// Box statistics: whisker ends are the extremes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quartiles {
    pub lower: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub upper: f64,
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let (i, frac) = (pos.floor() as usize, pos.fract());
    match sorted.get(i + 1) {
        Some(&next) => sorted[i] + frac * (next - sorted[i]),
        None => sorted[i],
    }
}

impl Quartiles {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Some(Self {
            lower: v[0],
            q1: quantile(&v, 0.25),
            median: quantile(&v, 0.5),
            q3: quantile(&v, 0.75),
            upper: v[v.len() - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub size: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    /// `completed`, `infeasible`, `step-limit`, or `error: ...`.
    pub status: String,
    pub replans: usize,
    pub time_lower_ns: Option<f64>,
    pub time_q1_ns: Option<f64>,
    pub time_median_ns: Option<f64>,
    pub time_q3_ns: Option<f64>,
    pub time_upper_ns: Option<f64>,
    pub expansions: u64,
    pub loop_violation: Option<u64>,
    pub loop_travel: Option<u64>,
    /// Iterative median over this row's median, on LTL-D* rows.
    pub speedup: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub size: usize,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub failed: usize,
    pub mean_loop_violation: Option<f64>,
    pub mean_loop_travel: Option<f64>,
    /// Median over every replan of every seed.
    pub median_time_ns: Option<f64>,
    pub speedup: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchResult {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<SummaryRow>,
    /// Replan times per (size, algorithm), for the summary medians.
    pub times: BTreeMap<(usize, String), Vec<f64>>,
}

fn failed_row(size: usize, seed: u64, algorithm: Algorithm, status: String) -> BenchRow {
    BenchRow {
        size,
        seed,
        algorithm,
        status,
        replans: 0,
        time_lower_ns: None,
        time_q1_ns: None,
        time_median_ns: None,
        time_q3_ns: None,
        time_upper_ns: None,
        expansions: 0,
        loop_violation: None,
        loop_travel: None,
        speedup: None,
    }
}

/// Runs every (size, seed, algorithm) combination. Failures become flagged
/// rows and the sweep continues.
pub fn run_bench(config: &BenchConfig, nba: &Nba) -> BenchResult {
    let mut result = BenchResult::default();
    for &size in &config.sizes {
        for &seed in &config.seeds {
            let map_config = RandomMapConfig { bump_density: config.bump_density, ..RandomMapConfig::new(size, config.density) };
            let world = random_map(seed, &map_config, nba).and_then(GridWorld::new);
            for &algorithm in &config.algorithms {
                let world = match &world {
                    Ok(w) => w,
                    Err(e) => {
                        result.rows.push(failed_row(size, seed, algorithm, format!("error: {e}")));
                        continue;
                    }
                };
                let sim = SimConfig { beta: config.beta, mode: config.mode, algorithm, loops: config.loops, ..SimConfig::default() };
                let report = match simulate(world, nba, &sim) {
                    Ok(r) => r,
                    Err(e) => {
                        result.rows.push(failed_row(size, seed, algorithm, format!("error: {e}")));
                        continue;
                    }
                };
                let times: Vec<f64> = report.replans().map(|e| e.wall_time_ns as f64).collect();
                let q = Quartiles::of(&times);
                let completed = report.outcome == Outcome::Completed;
                result.times.entry((size, algorithm.name().to_string())).or_default().extend(&times);
                result.rows.push(BenchRow {
                    size,
                    seed,
                    algorithm,
                    status: match report.outcome {
                        Outcome::Completed => "completed",
                        Outcome::Infeasible => "infeasible",
                        Outcome::StepLimit => "step-limit",
                    }
                    .to_string(),
                    replans: times.len(),
                    time_lower_ns: q.map(|q| q.lower),
                    time_q1_ns: q.map(|q| q.q1),
                    time_median_ns: q.map(|q| q.median),
                    time_q3_ns: q.map(|q| q.q3),
                    time_upper_ns: q.map(|q| q.upper),
                    expansions: report.events.iter().map(|e| e.expansions).sum(),
                    loop_violation: completed.then_some(report.traversed_violation),
                    loop_travel: completed.then_some(report.traversed_travel),
                    speedup: None,
                });
            }
        }
    }
    fill_speedups(&mut result);
    result
}

fn median_of(times: Option<&Vec<f64>>) -> Option<f64> {
    times.and_then(|t| Quartiles::of(t)).map(|q| q.median)
}

fn ratio(num: Option<f64>, den: Option<f64>) -> Option<f64> {
    match (num, den) {
        (Some(n), Some(d)) if d > 0.0 => Some(n / d),
        _ => None,
    }
}

fn fill_speedups(result: &mut BenchResult) {
    let iterative: BTreeMap<(usize, u64), Option<f64>> = result
        .rows
        .iter()
        .filter(|r| r.algorithm == Algorithm::Iterative)
        .map(|r| ((r.size, r.seed), r.time_median_ns))
        .collect();
    for row in result.rows.iter_mut().filter(|r| r.algorithm == Algorithm::LtlDstar) {
        row.speedup = ratio(iterative.get(&(row.size, row.seed)).copied().flatten(), row.time_median_ns);
    }

    let mut groups: BTreeMap<(usize, String), Vec<&BenchRow>> = BTreeMap::new();
    for r in &result.rows {
        groups.entry((r.size, r.algorithm.name().to_string())).or_default().push(r);
    }
    let mean = |v: Vec<u64>| (!v.is_empty()).then(|| v.iter().sum::<u64>() as f64 / v.len() as f64);
    for ((size, name), rows) in &groups {
        let algorithm = rows[0].algorithm;
        let median_time_ns = median_of(result.times.get(&(*size, name.clone())));
        let speedup = (algorithm == Algorithm::LtlDstar)
            .then(|| ratio(median_of(result.times.get(&(*size, Algorithm::Iterative.name().to_string()))), median_time_ns))
            .flatten();
        result.summary.push(SummaryRow {
            size: *size,
            algorithm,
            runs: rows.len(),
            failed: rows.iter().filter(|r| r.status != "completed").count(),
            mean_loop_violation: mean(rows.iter().filter_map(|r| r.loop_violation).collect()),
            mean_loop_travel: mean(rows.iter().filter_map(|r| r.loop_travel).collect()),
            median_time_ns,
            speedup,
        });
    }
}

fn write_rows<T: Serialize, W: io::Write>(rows: &[T], header: &str, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(header.split(','))?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

impl BenchResult {
    pub fn write_rows_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        write_rows(&self.rows, BENCH_CSV_HEADER, out)
    }

    pub fn write_summary_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        write_rows(&self.summary, SUMMARY_CSV_HEADER, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartiles_interpolate() {
        let q = Quartiles::of(&[4.0, 1.0, 3.0, 2.0, 5.0]).unwrap();
        assert_eq!((q.lower, q.q1, q.median, q.q3, q.upper), (1.0, 2.0, 3.0, 4.0, 5.0));
        let q = Quartiles::of(&[1.0, 2.0]).unwrap();
        assert_eq!((q.q1, q.median, q.q3), (1.25, 1.5, 1.75));
        assert!(Quartiles::of(&[]).is_none());
    }

    #[test]
    fn config_validation() {
        let ok = r#"{"sizes": [10], "seeds": [1, 2, 3], "density": 0.4, "algorithms": ["ltl-dstar", "iterative"]}"#;
        let c = BenchConfig::from_json(ok).unwrap();
        assert_eq!((c.beta, c.loops, c.mode), (10, 1, PlanMode::Plain));
        let empty = ok.replace(r#"["ltl-dstar", "iterative"]"#, "[]");
        assert!(matches!(BenchConfig::from_json(&empty), Err(BenchError::Invalid(_))));
        let tiny = ok.replace("[10]", "[3]");
        assert!(matches!(BenchConfig::from_json(&tiny), Err(BenchError::Invalid(_))));
    }
}
