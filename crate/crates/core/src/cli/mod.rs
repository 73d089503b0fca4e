//! Command-line front end: scenario ingestion, dispatch, and result files.
//!
//! Exit codes: 0 on success, 2 for any input problem (unreadable or
//! malformed scenario, schema violation, bad flags), 3 for output I/O
//! failures. Nothing is written until the scenario has fully validated.

pub mod output;
pub mod scenario;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::acb::{admitted_load, simulate_access};
use crate::netsim::{estimate_silencing_area_coverage_with, estimate_success_with, Workers};
use crate::planner::sweep;
use crate::rng::{trial_rng, Purpose};
use crate::satwet::charge_curve;

pub use output::{emit_results, format_sig6, Cell, Table};
pub use scenario::ScenarioFile;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Input(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Parser)]
#[command(name = "resilnet", version, about = "Post-disaster cellular resilience experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uplink success and silencing-area coverage for each listed policy
    SilencingRun(RunArgs),
    /// Grid over silencing factor and radius, with the best trade-off row
    SilencingSweep(RunArgs),
    /// Satellite charging time for every (height, payload) pair
    SatwetCurve(RunArgs),
    /// Access barring: expected and simulated admitted load per class
    AcbRun(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Scenario file (TOML)
    #[arg(long)]
    pub scenario: PathBuf,
    /// Override the scenario's master seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the number of Monte Carlo trials
    #[arg(long)]
    pub trials: Option<u64>,
    /// Output CSV; the run manifest is written next to it as `<out>.manifest`
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads (0 = all cores). Never changes results.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    SilencingRun,
    SilencingSweep,
    SatwetCurve,
    AcbRun,
}

impl SubcommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            SubcommandKind::SilencingRun => "silencing-run",
            SubcommandKind::SilencingSweep => "silencing-sweep",
            SubcommandKind::SatwetCurve => "satwet-curve",
            SubcommandKind::AcbRun => "acb-run",
        }
    }
}

/// One fully specified invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub subcommand: SubcommandKind,
    pub scenario_path: PathBuf,
    pub seed_override: Option<u64>,
    pub trials_override: Option<u64>,
    pub output_path: PathBuf,
    pub workers: usize,
}

impl From<Command> for RunSpec {
    fn from(c: Command) -> Self {
        let (kind, a) = match c {
            Command::SilencingRun(a) => (SubcommandKind::SilencingRun, a),
            Command::SilencingSweep(a) => (SubcommandKind::SilencingSweep, a),
            Command::SatwetCurve(a) => (SubcommandKind::SatwetCurve, a),
            Command::AcbRun(a) => (SubcommandKind::AcbRun, a),
        };
        RunSpec {
            subcommand: kind,
            scenario_path: a.scenario,
            seed_override: a.seed,
            trials_override: a.trials,
            output_path: a.out,
            workers: a.workers,
        }
    }
}

pub const SILENCING_RUN_HEADER: &[&str] = &[
    "policy",
    "rho",
    "silencing_radius_m",
    "p_disaster",
    "p_disaster_ci",
    "p_silencing",
    "p_silencing_ci",
    "coverage_holes",
    "n_trials",
    "seed",
];

pub const SWEEP_HEADER: &[&str] = &[
    "rho",
    "silencing_radius_m",
    "p_disaster",
    "p_disaster_ci",
    "p_silencing",
    "p_silencing_ci",
    "utility",
    "n_trials",
    "seed",
];

pub const SATWET_HEADER: &[&str] = &["height_m", "payload_bits", "mode", "harvested_w", "charging_s"];

pub const ACB_HEADER: &[&str] = &[
    "class",
    "acdc_category",
    "arrival_rate",
    "barring_prob",
    "expected_admitted_rate",
    "admitted_rate",
    "blocking_prob",
];

/// Validated inputs for a run, with overrides already applied.
struct Prepared {
    file: ScenarioFile,
    table: Table,
    best: Option<String>,
}

fn apply_overrides(file: &mut ScenarioFile, spec: &RunSpec) {
    if let Some(seed) = spec.seed_override {
        file.network.seed = seed;
        file.acb.seed = seed;
    }
    if let Some(n) = spec.trials_override {
        file.network.n_trials = n;
    }
}

fn compute(spec: &RunSpec) -> Result<Prepared, CliError> {
    let mut file = ScenarioFile::load(&spec.scenario_path)?;
    apply_overrides(&mut file, spec);
    let workers = Workers(spec.workers);
    let mut best = None;

    let table = match spec.subcommand {
        SubcommandKind::SilencingRun => {
            let cfg = file.network_config()?;
            if file.silencing.policies.is_empty() {
                return Err(CliError::Input("invalid value for `silencing.policies`: must not be empty".into()));
            }
            let mut t = Table::new(SILENCING_RUN_HEADER);
            for &policy in &file.silencing.policies {
                let up = estimate_success_with(&cfg, policy, workers);
                let cov = estimate_silencing_area_coverage_with(&cfg, policy, workers);
                t.push(vec![
                    policy.to_string().into(),
                    policy.rho().into(),
                    cfg.silencing_radius_m.into(),
                    up.value.into(),
                    up.ci_halfwidth.into(),
                    cov.value.into(),
                    cov.ci_halfwidth.into(),
                    up.coverage_holes.into(),
                    cfg.n_trials.into(),
                    cfg.master_seed.into(),
                ]);
            }
            t
        }
        SubcommandKind::SilencingSweep => {
            let cfg = file.network_config()?;
            let (grid, weights) = file.sweep_grid(&cfg)?;
            let rows = sweep(&cfg, &grid, &weights, workers).map_err(|e| CliError::Input(e.to_string()))?;
            if let Some(b) = crate::planner::best_row(&rows) {
                best = Some(format!(
                    "best_rho = {}\nbest_silencing_radius_m = {}\nbest_utility = {}\n",
                    format_sig6(b.rho),
                    format_sig6(b.silencing_radius_m),
                    format_sig6(b.utility)
                ));
            }
            let mut t = Table::new(SWEEP_HEADER);
            for r in rows {
                t.push(vec![
                    r.rho.into(),
                    r.silencing_radius_m.into(),
                    r.p_disaster.value.into(),
                    r.p_disaster.ci_halfwidth.into(),
                    r.p_silencing.value.into(),
                    r.p_silencing.ci_halfwidth.into(),
                    r.utility.into(),
                    cfg.n_trials.into(),
                    cfg.master_seed.into(),
                ]);
            }
            t
        }
        SubcommandKind::SatwetCurve => {
            let (params, model) = file.satwet()?;
            let rows = charge_curve(
                &file.satwet.heights_m,
                &file.satwet.payloads_bits,
                &params,
                &model,
                file.satwet.mode,
            )
            .map_err(|e| CliError::Input(e.to_string()))?;
            let mut t = Table::new(SATWET_HEADER);
            for r in rows {
                t.push(vec![
                    r.height_m.into(),
                    r.payload_bits.into(),
                    r.mode.as_str().into(),
                    r.harvested_w.into(),
                    r.charging_s.into(),
                ]);
            }
            t
        }
        SubcommandKind::AcbRun => {
            let profile = file.acb_profile()?;
            let expected = admitted_load(&profile);
            let mut rng = trial_rng(file.acb.seed, Purpose::Access, 0, 0);
            let sim = simulate_access(&profile, file.acb.capacity_per_s, file.acb.horizon_s, &mut rng)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let mut t = Table::new(ACB_HEADER);
            for ((c, e), s) in profile.classes.iter().zip(&expected.classes).zip(&sim.classes) {
                t.push(vec![
                    c.name.clone().into(),
                    c.acdc_category.into(),
                    c.arrival_rate.into(),
                    c.barring_prob.into(),
                    e.admitted_rate.into(),
                    s.admitted_rate.into(),
                    s.blocking_prob.into(),
                ]);
            }
            t
        }
    };
    Ok(Prepared { file, table, best })
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

fn manifest(spec: &RunSpec, prepared: &Prepared) -> String {
    let mut m = String::new();
    m.push_str("# resilnet run manifest\n");
    m.push_str(&format!("version = \"{VERSION}\"\n"));
    m.push_str(&format!("subcommand = \"{}\"\n", spec.subcommand.name()));
    m.push_str(&format!(
        "scenario = \"{}\"\n",
        spec.scenario_path.display().to_string().replace('\\', "/")
    ));
    m.push_str(&format!("seed = {}\n", prepared.file.network.seed));
    m.push_str(&format!("n_trials = {}\n", prepared.file.network.n_trials));
    m.push_str(&format!("rows = {}\n", prepared.table.rows.len()));
    if let Some(best) = &prepared.best {
        m.push_str(best);
    }
    m.push_str("\n# resolved scenario\n");
    m.push_str(&prepared.file.to_toml());
    m
}

/// Runs one invocation end to end and writes the CSV and its manifest.
pub fn run_scenario(spec: &RunSpec) -> Result<(), CliError> {
    let prepared = compute(spec)?;
    emit_results(&prepared.table, &spec.output_path)?;
    let mpath = manifest_path(&spec.output_path);
    std::fs::write(&mpath, manifest(spec, &prepared))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", mpath.display())))?;
    Ok(())
}

/// Entry point shared by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_scenario(&cli.command.into()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("resilnet: {e}");
            e.exit_code()
        }
    }
}
