use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ltl_dstar::assets;
use ltl_dstar::bench::{run_bench, BenchConfig};
use ltl_dstar::hoa::parse_nba;
use ltl_dstar::scenario::GridScenario;
use ltl_dstar::sim::{simulate, SimConfig};
use ltl_dstar::trace::{Algorithm, Outcome, PlanMode};
use ltl_dstar::waypoint::WaypointGraph;
use ltl_dstar::world::{random_map, Belief, GridWorld, RandomMapConfig};
use ltl_dstar_core::{Nba, ProductAutomaton, Wts};
use serde_json::json;

/// Exit status when no accepting run exists.
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(name = "ltl-dstar", version, about = "Incremental temporal-logic replanning on gridworlds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print automaton, transition-system and product sizes as JSON.
    Build(BuildArgs),
    /// Run one sense-replan-move simulation and write its trace.
    Simulate(SimulateArgs),
    /// Sweep random maps and write aggregate CSVs.
    Bench(BenchArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Büchi automaton in HOA format.
    #[arg(long)]
    nba: PathBuf,
    /// Grid scenario (JSON).
    #[arg(long, conflicts_with = "waypoints", required_unless_present = "waypoints")]
    scenario: Option<PathBuf>,
    /// Waypoint graph (JSON).
    #[arg(long)]
    waypoints: Option<PathBuf>,
    /// Also report the relaxed product.
    #[arg(long)]
    relaxed: bool,
    /// Build the grid with every hidden obstacle and bump known.
    #[arg(long)]
    known: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Relaxed,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    LtlDstar,
    Iterative,
    LocalRevision,
}

#[derive(Args)]
struct SimulateArgs {
    /// Büchi automaton in HOA format; defaults to the A-B-C-D sequencing task.
    #[arg(long)]
    nba: Option<PathBuf>,
    /// Grid scenario (JSON); a random map is generated when absent.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Size of the random map.
    #[arg(long, default_value_t = 20)]
    size: usize,
    /// Obstacle density of the random map.
    #[arg(long, default_value_t = 0.4)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    beta: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Plain)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = AlgoArg::LtlDstar)]
    algo: AlgoArg,
    /// Suffix traversals to complete.
    #[arg(long, default_value_t = 1)]
    loops: usize,
    /// Writes `<prefix>.csv` and `<prefix>.json`.
    #[arg(long)]
    trace_out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Bench configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the configured per-run CSV path.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_nba(path: Option<&Path>) -> Result<Nba> {
    match path {
        None => Ok(assets::sequence_automaton()),
        Some(p) => parse_nba(&read(p)?).with_context(|| format!("{}", p.display())),
    }
}

fn build(args: &BuildArgs) -> Result<()> {
    let nba = load_nba(Some(&args.nba))?;
    let wts: Wts = match (&args.scenario, &args.waypoints) {
        (Some(p), _) => {
            let world = GridWorld::new(GridScenario::from_json(&read(p)?).with_context(|| format!("{}", p.display()))?)?;
            let belief = if args.known { world.full_belief() } else { Belief::default() };
            world.to_wts(nba.aps(), &belief)?
        }
        (None, Some(p)) => WaypointGraph::from_json(&read(p)?)
            .and_then(|g| g.to_wts(nba.aps()))
            .with_context(|| format!("{}", p.display()))?,
        (None, None) => bail!("either --scenario or --waypoints is required"),
    };
    let pa = ProductAutomaton::build(&wts, &nba)?;
    let mut stats = json!({
        "nba_states": nba.num_states(),
        "nba_transitions": nba.transitions().len(),
        "wts_states": wts.num_states(),
        "wts_transitions": wts.edges().len(),
        "product_states": pa.num_states(),
        "product_transitions": pa.num_finite_edges(),
    });
    if args.relaxed {
        let relaxed = ProductAutomaton::build_relaxed(&wts, &nba)?;
        stats["relaxed_product_states"] = json!(relaxed.num_states());
        stats["relaxed_product_transitions"] = json!(relaxed.num_finite_edges());
    }
    println!("{}", serde_json::to_string_pretty(&stats)?);
    Ok(())
}

fn simulate_cmd(args: &SimulateArgs) -> Result<ExitCode> {
    let nba = load_nba(args.nba.as_deref())?;
    let scenario = match &args.scenario {
        Some(p) => GridScenario::from_json(&read(p)?).with_context(|| format!("{}", p.display()))?,
        None => random_map(args.seed, &RandomMapConfig::new(args.size, args.density), &nba)?,
    };
    let world = GridWorld::new(scenario)?;
    let config = SimConfig {
        beta: args.beta,
        mode: match args.mode {
            ModeArg::Plain => PlanMode::Plain,
            ModeArg::Relaxed => PlanMode::Relaxed,
            ModeArg::Auto => PlanMode::Auto,
        },
        algorithm: match args.algo {
            AlgoArg::LtlDstar => Algorithm::LtlDstar,
            AlgoArg::Iterative => Algorithm::Iterative,
            AlgoArg::LocalRevision => Algorithm::LocalRevision,
        },
        loops: args.loops,
        ..SimConfig::default()
    };
    let report = simulate(&world, &nba, &config)?;
    if let Some(prefix) = &args.trace_out {
        let csv_path = prefix.with_extension("csv");
        report.write_csv(BufWriter::new(File::create(&csv_path).with_context(|| format!("{}", csv_path.display()))?))?;
        let json_path = prefix.with_extension("json");
        fs::write(&json_path, report.to_json()).with_context(|| format!("{}", json_path.display()))?;
        log::info!("trace written to {} and {}", csv_path.display(), json_path.display());
    }
    let last = report.events.last();
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "outcome": report.outcome,
            "steps": report.steps,
            "loops_completed": report.loops_completed,
            "replans": report.replans().count(),
            "traversed_violation": report.traversed_violation,
            "traversed_travel": report.traversed_travel,
            "final_total_violation": last.and_then(|e| e.total_violation),
            "final_total_travel": last.and_then(|e| e.total_travel),
        }))?
    );
    Ok(match report.outcome {
        Outcome::Infeasible => ExitCode::from(EXIT_INFEASIBLE),
        Outcome::Completed => ExitCode::SUCCESS,
        Outcome::StepLimit => ExitCode::FAILURE,
    })
}

fn bench(args: &BenchArgs) -> Result<()> {
    let mut config = BenchConfig::from_json(&read(&args.config)?).with_context(|| format!("{}", args.config.display()))?;
    if args.output.is_some() {
        config.output.clone_from(&args.output);
    }
    let nba = load_nba(config.nba.as_deref())?;
    let result = run_bench(&config, &nba);
    match &config.output {
        Some(path) => {
            result.write_rows_csv(BufWriter::new(File::create(path).with_context(|| format!("{}", path.display()))?))?;
            let summary = path.with_extension("summary.csv");
            result.write_summary_csv(BufWriter::new(File::create(&summary)?))?;
            log::info!("bench results in {} and {}", path.display(), summary.display());
        }
        None => result.write_rows_csv(std::io::stdout().lock())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Build(args) => build(args).map(|()| ExitCode::SUCCESS),
        Command::Simulate(args) => simulate_cmd(args),
        Command::Bench(args) => bench(args).map(|()| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LTL_DSTAR_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
