//! Command-line front end: solve, construct, verify, bound and
//! experiment subcommands over the JSON file formats of the core crate.
//!
//! Exit codes: 0 on success, 1 on invalid input (including unknown flags
//! and malformed files), 2 when a scale or enumeration budget is
//! exceeded. Results go to stdout as JSON (default) or CSV for the
//! tabular subcommands; diagnostics go to stderr.

pub mod experiment;

use clap::{Parser, Subcommand, ValueEnum};
use experiment::{
    row_to_csv, run_experiment, ConstructionKind, ExperimentConfig, CSV_HEADER, DEFAULT_SEED,
};
use scc_core::bounds::{
    djo_upper_bound, egp_bound, jensen_chain_check, katona_tarjan_bound,
    lower_bound_scc_multipartite, lower_bound_scc_multipartite_ln, WeightMatrix,
};
use scc_core::graph::Graph;
use scc_core::qi::{mols_family, random_qi_family, verify_family_property, PartitionFamily};
use scc_core::solver::{
    solve_cover_with, verify_cover, CliqueCover, CoverMode, Objective, SolverConfig,
};
use scc_core::Error;
use serde::Serialize;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

const BUDGET_ENV: &str = "SCC_LAB_BUDGET";

const AFTER_HELP: &str = "\
Default budgets:
  - exact solver: graphs up to 20 vertices (override per call with --limit-n)
  - experiment exact column: up to 12 vertices, aborted after 10000000 search nodes
  - family construction: at most 1000000 candidate partitions per row
    (override with the SCC_LAB_BUDGET environment variable)";

#[derive(Parser)]
#[command(
    name = "scc-lab",
    version,
    about = "Clique-cover parameters, qualitatively independent partition families, and the bounds connecting them",
    after_help = AFTER_HELP
)]
struct Cli {
    /// Output format for tabular results (experiment, bounds).
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Weight,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Cover,
    Partition,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    Mols,
}

#[derive(Subcommand)]
enum Command {
    /// Exact minimum clique cover or partition of a graph file.
    Solve {
        /// Graph JSON file: {"n": int, "edges": [[u, v], ...]}.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Cover)]
        mode: ModeArg,
        /// Soft vertex-count limit for the exact search.
        #[arg(long = "limit-n")]
        limit_n: Option<usize>,
    },
    /// Build a partition family (random accumulation or Latin squares).
    Construct {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Ground set size (random only).
        #[arg(long)]
        n: Option<usize>,
        /// Number of classes per partition; the Latin-square family needs a prime.
        #[arg(long)]
        d: usize,
        /// Rows to build (random: target; mols: defaults to d+1).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check the disjointness pattern of a family file.
    VerifyFamily {
        /// Family JSON file: {"n", "t", "d", "rows"}.
        #[arg(long, visible_alias = "file")]
        family: PathBuf,
    },
    /// Check a clique cover file against a graph file.
    VerifyCover {
        #[arg(long)]
        graph: PathBuf,
        /// Cover JSON file: {"mode": "cover"|"partition", "cliques": [[..], ..]}.
        #[arg(long)]
        cover: PathBuf,
    },
    /// Closed-form bounds for K_t(d).
    Bounds {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
    },
    /// Evaluate the lower-bound proof chain on a family file.
    ChainCheck {
        #[arg(long, visible_alias = "file")]
        family: PathBuf,
    },
    /// scc-versus-bounds table over K_t(d) for a list of t values.
    Experiment {
        #[arg(long)]
        d: usize,
        /// Comma-separated list of t values.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        t: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Family construction for the construction_weight column.
        #[arg(long, value_enum, default_value_t = KindArg::Random)]
        kind: KindArg,
    },
}

/// Parses `argv` and runs one subcommand, returning the process exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here with success status
            let code = if e.exit_code() == 0 { 0 } else { 1 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit(_) => 2,
                _ => 1,
            }
        }
    }
}

#[derive(Serialize)]
struct SolveOutput {
    optimum: usize,
    witness: CliqueCover,
    nodes: u64,
}

#[derive(Serialize)]
struct BoundsOutput {
    t: usize,
    d: usize,
    n: usize,
    lower_bound_log2: f64,
    lower_bound_ln: f64,
    djo_upper: f64,
    katona_tarjan: usize,
    egp: usize,
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    let format = cli.format;
    match cli.command {
        Command::Solve {
            graph,
            objective,
            mode,
            limit_n,
        } => {
            require_json(format, "solve")?;
            let g: Graph = read_json(&graph)?;
            let config = SolverConfig {
                n_limit: limit_n.unwrap_or_else(|| SolverConfig::default().n_limit),
                ..SolverConfig::default()
            };
            let objective = match objective {
                ObjectiveArg::Weight => Objective::Weight,
                ObjectiveArg::Count => Objective::Count,
            };
            let mode = match mode {
                ModeArg::Cover => CoverMode::Cover,
                ModeArg::Partition => CoverMode::Partition,
            };
            let r = solve_cover_with(&g, objective, mode, &config)?;
            print_json(&SolveOutput {
                optimum: r.optimum,
                witness: r.witness,
                nodes: r.nodes_explored,
            })
        }
        Command::Construct { kind, n, d, t, seed } => {
            require_json(format, "construct")?;
            let family = match kind {
                KindArg::Mols => {
                    let full = mols_family(d)?;
                    match t {
                        None => full,
                        Some(t) if t <= full.t() => PartitionFamily::new(
                            full.ground_n(),
                            d,
                            full.rows()[..t].to_vec(),
                        )?,
                        Some(t) => {
                            return Err(Error::InvalidArgument(format!(
                                "the Latin-square family for d={d} has {} rows, cannot take {t}",
                                full.t()
                            )))
                        }
                    }
                }
                KindArg::Random => {
                    let n = n.ok_or_else(|| {
                        Error::InvalidArgument("--n is required for --kind random".into())
                    })?;
                    let t = t.ok_or_else(|| {
                        Error::InvalidArgument("--t is required for --kind random".into())
                    })?;
                    random_qi_family(n, d, t, seed)?
                }
            };
            print_json(&family)
        }
        Command::VerifyFamily { family } => {
            require_json(format, "verify-family")?;
            let f: PartitionFamily = read_json(&family)?;
            print_json(&verify_family_property(&f))
        }
        Command::VerifyCover { graph, cover } => {
            require_json(format, "verify-cover")?;
            let g: Graph = read_json(&graph)?;
            let c: CliqueCover = read_json(&cover)?;
            print_json(&verify_cover(&g, &c)?)
        }
        Command::Bounds { t, d } => {
            let n = t.checked_mul(d).ok_or_else(|| {
                Error::InvalidArgument("t*d overflows".into())
            })?;
            let out = BoundsOutput {
                t,
                d,
                n,
                lower_bound_log2: lower_bound_scc_multipartite(t, d)?,
                lower_bound_ln: lower_bound_scc_multipartite_ln(t, d)?,
                djo_upper: djo_upper_bound(n, d)?,
                katona_tarjan: katona_tarjan_bound(n),
                egp: egp_bound(n),
            };
            match format {
                OutputFormat::Json => print_json(&out),
                OutputFormat::Csv => {
                    println!("t,d,n,lower_bound_log2,lower_bound_ln,djo_upper,katona_tarjan,egp");
                    println!(
                        "{},{},{},{},{},{},{},{}",
                        out.t,
                        out.d,
                        out.n,
                        out.lower_bound_log2,
                        out.lower_bound_ln,
                        out.djo_upper,
                        out.katona_tarjan,
                        out.egp
                    );
                    Ok(())
                }
            }
        }
        Command::ChainCheck { family } => {
            require_json(format, "chain-check")?;
            let f: PartitionFamily = read_json(&family)?;
            let matrix = WeightMatrix::from_family(&f)?;
            print_json(&jensen_chain_check(&matrix))
        }
        Command::Experiment { d, t, seed, kind } => {
            let mut config = ExperimentConfig {
                seed,
                kind: match kind {
                    KindArg::Random => ConstructionKind::Random,
                    KindArg::Mols => ConstructionKind::Mols,
                },
                ..ExperimentConfig::default()
            };
            if let Some(budget) = read_budget_env()? {
                config.budget.max_candidates_per_row = budget;
            }
            let rows = run_experiment(d, &t, &config)?;
            match format {
                OutputFormat::Json => print_json(&rows),
                OutputFormat::Csv => {
                    println!("{CSV_HEADER}");
                    for row in &rows {
                        println!("{}", row_to_csv(row));
                    }
                    Ok(())
                }
            }
        }
    }
}

fn require_json(format: OutputFormat, command: &str) -> Result<(), Error> {
    if format == OutputFormat::Csv {
        return Err(Error::InvalidArgument(format!(
            "{command} output is not tabular; use the default JSON format"
        )));
    }
    Ok(())
}

fn read_budget_env() -> Result<Option<u64>, Error> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}={s} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("cannot parse {}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let s = serde_json::to_string(value)
        .map_err(|e| Error::InvalidArgument(format!("serialization failed: {e}")))?;
    println!("{s}");
    Ok(())
}
