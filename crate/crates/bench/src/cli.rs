use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dcqaoa::graph::{parse_edge_list, random_graph};
use dcqaoa::qaoa::{qaoa_maxcut, OptimizerConfig, QaoaConfig, MAX_QUBITS};
use dcqaoa::qsr::kl_divergence;
use dcqaoa::seed::derive_seed;
use dcqaoa::solution::best_sampled_cut;
use dcqaoa::{dc_qaoa, DcConfig, Graph, QsrScheme};
use thiserror::Error;

use crate::compare::run_compare;
use crate::report::{reference_cut, GraphInfo, Metrics, RunReport, REPORT_SCHEMA};
use crate::suite::default_suite;
use crate::sweep::{run_sweep, Axis};
use crate::{write_csv, Timing};

/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "DCQAOA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "dcqaoa", version, about = "Divide-and-conquer QAOA for MaxCut")]
pub struct Cli {
    /// Report every runtime as 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Worker threads (default: $DCQAOA_THREADS, else one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a connected G(n, p) random graph as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one graph and print a JSON report.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Also run QAOA on the whole graph and report the KL divergence.
        #[arg(long)]
        kl: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vary one parameter and emit one CSV row per value and repeat.
    Sweep {
        graph: PathBuf,
        #[arg(long)]
        axis: Axis,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare DC-QAOA with random search on graph files or the default suite.
    Compare {
        graphs: Vec<PathBuf>,
        /// Use the built-in seven-graph suite.
        #[arg(long)]
        suite: bool,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, default_value_t = 3)]
    pub p: usize,
    #[arg(long, default_value_t = 20)]
    pub t: usize,
    #[arg(long, default_value_t = 1000)]
    pub s: u64,
    #[arg(long, default_value_t = QsrScheme::MinXMul)]
    pub scheme: QsrScheme,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Objective evaluations per optimizer restart at each leaf.
    #[arg(long, default_value_t = dcqaoa::dc::LEAF_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = 5)]
    pub restarts: usize,
}

impl SolverArgs {
    pub fn config(&self) -> DcConfig {
        DcConfig {
            p: self.p,
            t: self.t,
            s: self.s,
            k: self.k,
            scheme: self.scheme,
            seed: self.seed,
            optimizer: OptimizerConfig {
                budget: self.budget,
                restarts: self.restarts,
                ..OptimizerConfig::default()
            },
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Solver(dcqaoa::Error),
}

impl CliError {
    /// 1 for bad input, 2 when the solver cannot handle a valid graph.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(_) => 2,
            CliError::Input(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<dcqaoa::Error> for CliError {
    fn from(e: dcqaoa::Error) -> Self {
        use dcqaoa::Error::*;
        match e {
            ConnectivityExceeded { .. } | NoProgress { .. } | ReconstructionFailed { .. } | TooLarge { .. } => {
                CliError::Solver(e)
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => io::stdout().write_all(bytes).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn csv_bytes<R: serde::Serialize>(rows: &[R]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(buf)
}

pub fn solve_report(g: &Graph, cfg: &DcConfig, kl: bool, timing: Timing) -> Result<RunReport, CliError> {
    if kl && g.node_count() > MAX_QUBITS {
        return Err(CliError::Input(format!(
            "--kl simulates the whole graph, which is limited to {MAX_QUBITS} nodes"
        )));
    }
    let start = Instant::now();
    let run = dc_qaoa(g, cfg)?;
    let runtime = timing.seconds(start);
    let best = best_sampled_cut(g, &run.solution)?.map_or(0, |(_, c)| c);
    let reference = reference_cut(g, &[best], cfg.s * run.tree.size() as u64, cfg.seed);
    let mut metrics = Metrics::compute(g, &run.solution, &run.tree, reference, runtime)?;
    if kl {
        let qcfg = QaoaConfig {
            p: cfg.p,
            shots: cfg.s,
            optimizer: cfg.optimizer.clone(),
        };
        let original = qaoa_maxcut(g, &qcfg, derive_seed(cfg.seed, [u64::MAX]))?;
        metrics.kl = Some(kl_divergence(&run.solution, &original)?);
    }
    Ok(RunReport {
        schema: REPORT_SCHEMA.to_string(),
        graph: GraphInfo::of(g),
        config: cfg.clone(),
        metrics,
        solution: run.solution,
        partition: run.tree,
    })
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let timing = if cli.no_timing {
        Timing::Suppressed
    } else {
        Timing::Measured
    };
    match cli.command {
        Command::Gen { n, edge_prob, seed, out } => {
            let g = random_graph(n, edge_prob, seed)?;
            emit(out.as_deref(), g.to_edge_list().as_bytes())?;
            eprintln!("nodes {} edges {}", g.node_count(), g.edge_count());
        }
        Command::Solve { graph, solver, kl, out } => {
            let g = read_graph(&graph)?;
            let report = solve_report(&g, &solver.config(), kl, timing)?;
            let mut json = serde_json::to_vec_pretty(&report).expect("report serializes");
            json.push(b'\n');
            emit(out.as_deref(), &json)?;
        }
        Command::Sweep { graph, axis, values, repeats, solver, out } => {
            if repeats == 0 {
                return Err(CliError::Input("--repeats must be at least 1".into()));
            }
            let g = read_graph(&graph)?;
            let cfg = solver.config();
            cfg.validate()?;
            let rows = run_sweep(&g, &cfg, axis, &values, repeats, timing);
            emit(out.as_deref(), &csv_bytes(&rows)?)?;
        }
        Command::Compare { graphs, suite, repeats, solver, out } => {
            if repeats == 0 {
                return Err(CliError::Input("--repeats must be at least 1".into()));
            }
            let cfg = solver.config();
            cfg.validate()?;
            let mut named: Vec<(String, Graph)> = Vec::new();
            if suite {
                named.extend(default_suite(cfg.k)?.into_iter().map(|i| (i.name, i.graph)));
            }
            for path in &graphs {
                named.push((path.display().to_string(), read_graph(path)?));
            }
            if named.is_empty() {
                return Err(CliError::Input("compare needs at least one graph (or --suite)".into()));
            }
            let rows = run_compare(&named, &cfg, repeats, timing);
            emit(out.as_deref(), &csv_bytes(&rows)?)?;
        }
    }
    Ok(())
}
