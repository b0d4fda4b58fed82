//! Command-line driver: argument definitions, command execution and the
//! CSV/JSON artifacts each command writes.

pub mod output;
pub mod report;
pub mod tables;

use std::path::{Path, PathBuf};

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use trirelax::experiment::{
    regression_series, scenario_bounds, tau_grid, with_threads, ScenarioConfig, DEFAULT_TAU_POINTS,
};
use trirelax::{
    make_hypergraph, performance_profile, run_scenario, width_difference_report, worst_case_sweep, Scenario,
};

use crate::output::Outputs;

pub const THREADS_ENV: &str = "TRIRELAX_THREADS";
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "trirelax", version, about = "Relaxations of trilinear monomials: volumes and width experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the hypergraph and random bound sets of a scenario.
    GenBounds(InstanceArgs),
    /// Full width experiment: bounds, widths, differences, profile, volumes, regression.
    Run(RunArgs),
    /// Per-edge volumes of all four relaxations (no LP solves).
    Volumes(InstanceArgs),
    /// Recompute profile.csv from widths.csv in a results directory.
    Profile {
        dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TAU_POINTS, value_parser = at_least_two)]
        tau_points: usize,
    },
    /// Recompute regression.csv from widths.csv and volumes.csv.
    Regress { dir: PathBuf },
    /// Quasi mean widths of the three double-McCormick systems over an a3 sweep.
    WorstCase(WorstCaseArgs),
    /// Summarize a results directory.
    Report { dir: PathBuf },
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long, default_value = "dense")]
    pub scenario: Scenario,
    #[arg(long, default_value_t = ScenarioConfig::DESK_BOUND_SETS, value_parser = positive)]
    pub bound_sets: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// 30 bound sets (and 100,000 directions where applicable).
    #[arg(long, conflicts_with = "bound_sets")]
    pub paper_scale: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = ScenarioConfig::DESK_DIRECTIONS, conflicts_with = "paper_scale", value_parser = positive)]
    pub directions: usize,
    /// Worker threads; 0 uses every available core.
    #[arg(long, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, default_value_t = DEFAULT_TAU_POINTS, value_parser = at_least_two)]
    pub tau_points: usize,
}

#[derive(Debug, Args)]
pub struct WorstCaseArgs {
    /// Comma-separated upper bounds of the sixth vertex.
    #[arg(long, value_delimiter = ',', default_values_t = [30u32, 60], value_parser = clap::value_parser!(u32).range(2..))]
    pub b3: Vec<u32>,
    #[arg(long, default_value_t = ScenarioConfig::DESK_DIRECTIONS, value_parser = positive)]
    pub directions: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}

fn count_at_least(s: &str, min: usize) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= min => Ok(v),
        _ => Err(format!("expected an integer ≥ {min}")),
    }
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    count_at_least(s, 1)
}

fn at_least_two(s: &str) -> std::result::Result<usize, String> {
    count_at_least(s, 2)
}

impl InstanceArgs {
    fn bound_sets(&self) -> usize {
        if self.paper_scale {
            ScenarioConfig::PAPER_BOUND_SETS
        } else {
            self.bound_sets
        }
    }
}

impl RunArgs {
    pub fn config(&self) -> ScenarioConfig {
        ScenarioConfig {
            scenario: self.instance.scenario,
            bound_sets: self.instance.bound_sets(),
            directions: if self.instance.paper_scale { ScenarioConfig::PAPER_DIRECTIONS } else { self.directions },
            seed: self.instance.seed,
            retain_widths: false,
        }
    }
}

/// Runs one command. Returns the text meant for standard output.
pub fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::GenBounds(args) => {
            let mut out = Outputs::new();
            instance_files(&mut out, &args)?;
            finish(out, &args.out)
        }
        Command::Volumes(args) => {
            let mut out = Outputs::new();
            let (h, sets) = instance_files(&mut out, &args)?;
            let volumes =
                sets.iter().map(|b| trirelax::experiment::edge_volumes(&h, b)).collect::<trirelax::Result<Vec<_>>>()?;
            out.add("volumes.csv", tables::volumes_csv(&volumes)?);
            finish(out, &args.out)
        }
        Command::Run(args) => {
            let config = args.config();
            let run = with_threads(args.threads, || run_scenario(config))??;
            let mut out = Outputs::new();
            out.add("hypergraph.json", tables::json(&run.hypergraph)?);
            out.add("bounds.json", tables::json(&run.bound_sets)?);
            out.add("widths.csv", tables::widths_csv(&run.records)?);
            out.add("differences.csv", tables::differences_csv(&width_difference_report(&run.records)?)?);
            let profile = performance_profile(&run.records, &tau_grid(args.tau_points))?;
            out.add("profile.csv", tables::profile_csv(&profile)?);
            out.add("volumes.csv", tables::volumes_csv(&run.volumes)?);
            out.add("regression.csv", tables::regression_csv(&regression_series(&run.volumes, &run.records)?)?);
            finish(out, &args.instance.out)
        }
        Command::Profile { dir, tau_points } => {
            let records = tables::read_widths(&dir.join(tables::WIDTHS))?;
            let mut out = Outputs::new();
            out.add("profile.csv", tables::profile_csv(&performance_profile(&records, &tau_grid(tau_points))?)?);
            finish(out, &dir)
        }
        Command::Regress { dir } => {
            let records = tables::read_widths(&dir.join(tables::WIDTHS))?;
            let volumes = tables::read_volumes(&dir.join(tables::VOLUMES))?;
            let mut out = Outputs::new();
            out.add("regression.csv", tables::regression_csv(&regression_series(&volumes, &records)?)?);
            finish(out, &dir)
        }
        Command::WorstCase(args) => {
            let rows = with_threads(args.threads, || {
                args.b3
                    .iter()
                    .map(|&b3| worst_case_sweep(b3, args.directions, args.seed))
                    .collect::<trirelax::Result<Vec<_>>>()
            })??;
            let mut out = Outputs::new();
            out.add("worstcase.csv", tables::worst_case_csv(rows.iter().flatten())?);
            finish(out, &args.out)
        }
        Command::Report { dir } => report::summarize(&dir),
    }
}

fn instance_files(out: &mut Outputs, args: &InstanceArgs) -> Result<(trirelax::Hypergraph, Vec<trirelax::BoundsSet>)> {
    let h = make_hypergraph(args.scenario);
    let sets = scenario_bounds(&h, args.seed, args.bound_sets());
    out.add("hypergraph.json", tables::json(&h)?);
    out.add("bounds.json", tables::json(&sets)?);
    Ok((h, sets))
}

fn finish(out: Outputs, dir: &Path) -> Result<String> {
    let names: Vec<String> = out.names().map(String::from).collect();
    out.commit(dir)?;
    Ok(names.iter().map(|n| format!("wrote {}\n", dir.join(n).display())).collect())
}
