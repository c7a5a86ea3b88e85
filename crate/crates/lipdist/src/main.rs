//! Thin command-line front end; all computation lives in the library.
//!
//! Exit codes are a stable contract: 0 success/exact, 1 invalid input,
//! 2 budget-bracketed result, 3 infinite distance.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use lipdist::io::{
    load_map_file, load_space, save_space, write_fixtures, write_separation, write_slope_sweep,
    ResultJson,
};
use lipdist::{
    exact_distance, geometry_fixture_suite, interval_separation_experiment, interval_space,
    local_search_upper_bound, pulse_separation_experiment, pulse_space, shrinking_slope_experiment,
    spectrum_lower_bound, DiscretizationParams, EnumerationMode, ExperimentConfig, Family,
    FiniteMetricSpace, SearchBudget, SignVector, SolveStatus,
};

#[derive(Parser)]
#[command(
    name = "lipdist",
    version,
    about = "Lipschitz distance between finite metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Interval,
    Pulse,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Interval => Family::Interval,
            FamilyArg::Pulse => Family::Pulse,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    /// Pairwise separation of the interval family
    Ce,
    /// Pairwise separation of the pulse family
    Ce2,
    /// Projection costs across a decreasing slope list
    Remark,
    /// Closed-form geometry fixtures
    Fixtures,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family space and write it as a space file
    Build {
        /// Block family the sign vector indexes
        family: FamilyArg,
        /// Sign vector as a digit string, e.g. 121 or 0101
        u: String,
        /// Truncation depth; defaults to the sign vector length
        #[arg(long = "N")]
        depth: Option<usize>,
        /// Samples per linear piece (endpoints included)
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Pulse slope in (0, 1]
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        /// Output path; defaults to <name>.json in the working directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the metric axioms of a space file
    Validate { space: PathBuf },
    /// Report dilations and Lipschitz cost of a map file
    Dilation {
        map: PathBuf,
        source: PathBuf,
        target: PathBuf,
    },
    /// Exact Lipschitz distance between two space files
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "budget-nodes")]
        budget_nodes: Option<u64>,
        #[arg(long = "budget-seconds")]
        budget_seconds: Option<f64>,
    },
    /// Bracket the distance from bounds alone (no exact search)
    Bound {
        a: PathBuf,
        b: PathBuf,
        /// Local-search restarts
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Run a named experiment and write CSV and JSON tables
    Experiment {
        name: ExperimentName,
        /// Truncation depth
        #[arg(long = "N")]
        depth: Option<usize>,
        /// Samples per linear piece
        #[arg(long)]
        k: Option<usize>,
        /// Slope list for the remark experiment, e.g. 1,0.5,0.25
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        /// Sign vector for the remark experiment
        #[arg(long)]
        u: Option<String>,
        /// Draw this many distinct random sign vectors instead of
        /// enumerating exhaustively
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "budget-nodes")]
        budget_nodes: Option<u64>,
        #[arg(long = "budget-seconds")]
        budget_seconds: Option<f64>,
        /// Output directory for the CSV/JSON pair
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2; exit code 2 is reserved for bracketed results
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn budget_from(nodes: Option<u64>, seconds: Option<f64>) -> SearchBudget {
    SearchBudget {
        max_nodes: nodes,
        max_time: seconds.map(Duration::from_secs_f64),
    }
}

/// Loads a space file and insists the metric axioms hold.
fn load_valid(path: &std::path::Path) -> Result<FiniteMetricSpace, String> {
    let space = load_space(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let report = space.validate();
    if !report.is_valid() {
        return Err(format!("{} failed validation:\n{report}", path.display()));
    }
    Ok(space)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Build {
            family,
            u,
            depth,
            k,
            eps,
            out,
        } => {
            let family = Family::from(family);
            let u = SignVector::parse(family, &u).map_err(|e| e.to_string())?;
            let depth = depth.unwrap_or(u.len());
            let params = DiscretizationParams::new(depth, k)
                .and_then(|p| p.with_slope(eps))
                .map_err(|e| e.to_string())?;
            let space = match family {
                Family::Interval => interval_space(&u, &params),
                Family::Pulse => pulse_space(&u, &params),
            }
            .map_err(|e| e.to_string())?;
            let out = out.unwrap_or_else(|| PathBuf::from(format!("{}.json", space.name())));
            save_space(&out, &space).map_err(|e| e.to_string())?;
            println!("wrote {}", out.display());
            println!("points: {}", space.len());
            println!("diameter: {}", space.diameter());
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { space } => {
            let space = load_space(&space).map_err(|e| e.to_string())?;
            let report = space.validate();
            println!("{report}");
            if report.is_valid() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Dilation {
            map,
            source,
            target,
        } => {
            let source = Arc::new(load_valid(&source)?);
            let target = Arc::new(load_valid(&target)?);
            let map = load_map_file(&map)
                .and_then(|m| m.into_map(source, target))
                .map_err(|e| e.to_string())?;
            let report = map.lipschitz_cost();
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Dist {
            a,
            b,
            budget_nodes,
            budget_seconds,
        } => {
            let x = Arc::new(load_valid(&a)?);
            let y = Arc::new(load_valid(&b)?);
            let result = exact_distance(&x, &y, &budget_from(budget_nodes, budget_seconds));
            print!("{}", ResultJson::from_result(&result).to_json_string());
            Ok(match result.status {
                SolveStatus::Exact => ExitCode::SUCCESS,
                SolveStatus::Bracketed => ExitCode::from(2),
                SolveStatus::Infinite => ExitCode::from(3),
            })
        }
        Command::Bound {
            a,
            b,
            restarts,
            seed,
        } => {
            let x = Arc::new(load_valid(&a)?);
            let y = Arc::new(load_valid(&b)?);
            if x.len() != y.len() {
                let result = exact_distance(&x, &y, &SearchBudget::zero());
                print!("{}", ResultJson::from_result(&result).to_json_string());
                return Ok(ExitCode::from(3));
            }
            let lower = spectrum_lower_bound(&x, &y).map_err(|e| e.to_string())?;
            let (upper, map) =
                local_search_upper_bound(&x, &y, restarts, seed).map_err(|e| e.to_string())?;
            let json = ResultJson {
                status: "bracketed".into(),
                value: None,
                bracket: Some([lower.min(upper), upper]),
                best_map: Some(map.perm().to_vec()),
                nodes: 0,
                time_ms: 0.0,
            };
            print!("{}", json.to_json_string());
            Ok(ExitCode::from(2))
        }
        Command::Experiment {
            name,
            depth,
            k,
            eps,
            u,
            sample,
            seed,
            budget_nodes,
            budget_seconds,
            out,
        } => {
            let budget = budget_from(budget_nodes, budget_seconds);
            let mode = match sample {
                Some(count) => EnumerationMode::Sample { count, seed },
                None => EnumerationMode::Exhaustive,
            };
            match name {
                ExperimentName::Ce => {
                    let mut cfg =
                        ExperimentConfig::new(Family::Interval, depth.unwrap_or(3), k.unwrap_or(2));
                    cfg.mode = mode;
                    cfg.budget = budget;
                    let result = interval_separation_experiment(&cfg).map_err(|e| e.to_string())?;
                    let (csv, json) = write_separation(&out, &result).map_err(|e| e.to_string())?;
                    println!("wrote {} and {}", csv.display(), json.display());
                    println!("threshold: {}", result.threshold);
                    println!(
                        "min_gap: {}",
                        result.min_gap.map_or("-".into(), |v| v.to_string())
                    );
                    println!(
                        "max_value: {} (bound {})",
                        result.max_value.map_or("-".into(), |v| v.to_string()),
                        lipdist::experiments::INTERVAL_MAP_COST_BOUND
                    );
                    experiment_exit(&result)
                }
                ExperimentName::Ce2 => {
                    let mut cfg =
                        ExperimentConfig::new(Family::Pulse, depth.unwrap_or(3), k.unwrap_or(2));
                    cfg.mode = mode;
                    cfg.budget = budget;
                    let result = pulse_separation_experiment(&cfg).map_err(|e| e.to_string())?;
                    let (csv, json) = write_separation(&out, &result).map_err(|e| e.to_string())?;
                    println!("wrote {} and {}", csv.display(), json.display());
                    println!("threshold: {}", result.threshold);
                    println!(
                        "min_gap: {}",
                        result.min_gap.map_or("-".into(), |v| v.to_string())
                    );
                    println!("infinite_pairs: {}", result.infinite_pairs);
                    println!(
                        "projection max: {} (bound {})",
                        result
                            .projection_costs
                            .as_ref()
                            .and_then(|c| c.iter().copied().reduce(f64::max))
                            .map_or("-".into(), |v| v.to_string()),
                        lipdist::experiments::PROJECTION_COST_BOUND
                    );
                    experiment_exit(&result)
                }
                ExperimentName::Remark => {
                    let u = u.unwrap_or_else(|| "101".to_string());
                    let u = SignVector::parse(Family::Pulse, &u).map_err(|e| e.to_string())?;
                    let eps = eps.unwrap_or_else(|| vec![1.0, 0.5, 0.25, 0.125]);
                    let params =
                        DiscretizationParams::new(depth.unwrap_or(u.len()), k.unwrap_or(3))
                            .map_err(|e| e.to_string())?;
                    let result =
                        shrinking_slope_experiment(&u, &eps, &params).map_err(|e| e.to_string())?;
                    let (csv, json) =
                        write_slope_sweep(&out, &result).map_err(|e| e.to_string())?;
                    println!("wrote {} and {}", csv.display(), json.display());
                    for row in &result.rows {
                        println!("eps={} cost={} bound={}", row.eps, row.cost, row.bound);
                    }
                    Ok(ExitCode::SUCCESS)
                }
                ExperimentName::Fixtures => {
                    let report = geometry_fixture_suite();
                    let (csv, json) = write_fixtures(&out, &report).map_err(|e| e.to_string())?;
                    println!("wrote {} and {}", csv.display(), json.display());
                    for c in &report.checks {
                        println!(
                            "{} n={}: expected {} actual {} -> {}",
                            c.name,
                            c.scale,
                            c.expected,
                            c.actual,
                            if c.pass { "pass" } else { "FAIL" }
                        );
                    }
                    if report.all_pass() {
                        Ok(ExitCode::SUCCESS)
                    } else {
                        Ok(ExitCode::from(1))
                    }
                }
            }
        }
    }
}

/// Exit 0 when every cell is exact; 2 when the budget forced brackets.
fn experiment_exit(result: &lipdist::SeparationExperiment) -> Result<ExitCode, String> {
    if result.rows.iter().any(|r| r.status == "bracketed") {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
