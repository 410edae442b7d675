//! DC-QAOA against random search on a set of graphs.

use std::time::Instant;

use dcqaoa::baselines::{greedy_local_search, random_search};
use dcqaoa::partition::recursive_split;
use dcqaoa::seed::derive_seed;
use dcqaoa::solution::{best_sampled_cut, expectation_value};
use dcqaoa::{dc_qaoa, DcConfig, Graph};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{ratio, reference_cut, REFERENCE_RESTARTS};
use crate::Timing;

pub const COMPARE_SCHEMA: &str = "compare/1";

/// Label of the trailing summary row.
pub const SUMMARY_LABEL: &str = "mean";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub schema: &'static str,
    pub graph: String,
    pub nodes: Option<usize>,
    pub edges: Option<usize>,
    pub repeat: Option<usize>,
    pub seed: Option<u64>,
    pub dc_best_cut: Option<usize>,
    pub dc_ar_best_sampled: Option<f64>,
    pub dc_ar_expectation: Option<f64>,
    pub dc_runtime_s: Option<f64>,
    pub rs_budget: Option<u64>,
    pub rs_best_cut: Option<usize>,
    pub rs_ar: Option<f64>,
    pub rs_runtime_s: Option<f64>,
    pub ls_best_cut: Option<usize>,
    pub reference_cut: Option<usize>,
    pub reference_kind: Option<&'static str>,
    /// Failed runs for the summary row; error text for a graph row.
    pub error: Option<String>,
}

struct Trial {
    seed: u64,
    dc: Result<(usize, f64), String>,
    dc_runtime: f64,
    rs_cut: usize,
    rs_runtime: f64,
}

/// Random search gets `s` draws for every tree node: one batch of samples
/// per leaf solve and per reconstruction step.
pub fn fair_budget(g: &Graph, cfg: &DcConfig) -> u64 {
    let nodes = recursive_split(g, cfg.k).map_or(1, |t| t.size() as u64);
    cfg.s * nodes
}

fn trial(g: &Graph, cfg: &DcConfig, repeat: usize, budget: u64, timing: Timing) -> Trial {
    let seed = derive_seed(cfg.seed, [repeat as u64]);
    let start = Instant::now();
    let dc = dc_qaoa(g, &DcConfig { seed, ..cfg.clone() })
        .and_then(|run| {
            let best = best_sampled_cut(g, &run.solution)?.map_or(0, |(_, c)| c);
            Ok((best, expectation_value(g, &run.solution)?))
        })
        .map_err(|e| e.to_string());
    let dc_runtime = timing.seconds(start);
    let start = Instant::now();
    let rs = random_search(g, budget, seed).expect("budget > 0");
    Trial {
        seed,
        dc,
        dc_runtime,
        rs_cut: rs.best_cut,
        rs_runtime: timing.seconds(start),
    }
}

fn graph_rows(name: &str, g: &Graph, cfg: &DcConfig, repeats: usize, timing: Timing) -> Vec<CompareRow> {
    let budget = fair_budget(g, cfg);
    let trials: Vec<Trial> = (0..repeats)
        .into_par_iter()
        .map(|r| trial(g, cfg, r, budget, timing))
        .collect();
    let ls = greedy_local_search(g, REFERENCE_RESTARTS, cfg.seed).expect("restarts > 0").best_cut;
    let found: Vec<usize> = trials
        .iter()
        .flat_map(|t| t.dc.as_ref().ok().map(|d| d.0).into_iter().chain([t.rs_cut]))
        .chain([ls])
        .collect();
    let reference = reference_cut(g, &found, budget, cfg.seed);
    trials
        .into_iter()
        .enumerate()
        .map(|(r, t)| {
            let (dc, error) = match t.dc {
                Ok(d) => (Some(d), None),
                Err(e) => (None, Some(e)),
            };
            CompareRow {
                schema: COMPARE_SCHEMA,
                graph: name.to_string(),
                nodes: Some(g.node_count()),
                edges: Some(g.edge_count()),
                repeat: Some(r),
                seed: Some(t.seed),
                dc_best_cut: dc.map(|d| d.0),
                dc_ar_best_sampled: dc.map(|d| ratio(d.0 as f64, reference.cut)),
                dc_ar_expectation: dc.map(|d| ratio(d.1, reference.cut)),
                dc_runtime_s: Some(t.dc_runtime),
                rs_budget: Some(budget),
                rs_best_cut: Some(t.rs_cut),
                rs_ar: Some(ratio(t.rs_cut as f64, reference.cut)),
                rs_runtime_s: Some(t.rs_runtime),
                ls_best_cut: Some(ls),
                reference_cut: Some(reference.cut),
                reference_kind: Some(reference.kind.name()),
                error,
            }
        })
        .collect()
}

/// Means over the rows where DC-QAOA produced a solution, so both methods
/// are averaged over the same trials. Random-search runtime is averaged
/// over every row.
pub fn summary(rows: &[CompareRow]) -> CompareRow {
    let ok: Vec<&CompareRow> = rows.iter().filter(|r| r.error.is_none()).collect();
    let mean = |xs: Vec<f64>| (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);
    let failed = rows.len() - ok.len();
    CompareRow {
        schema: COMPARE_SCHEMA,
        graph: SUMMARY_LABEL.to_string(),
        nodes: None,
        edges: None,
        repeat: None,
        seed: None,
        dc_best_cut: None,
        dc_ar_best_sampled: mean(ok.iter().filter_map(|r| r.dc_ar_best_sampled).collect()),
        dc_ar_expectation: mean(ok.iter().filter_map(|r| r.dc_ar_expectation).collect()),
        dc_runtime_s: mean(ok.iter().filter_map(|r| r.dc_runtime_s).collect()),
        rs_budget: None,
        rs_best_cut: None,
        rs_ar: mean(ok.iter().filter_map(|r| r.rs_ar).collect()),
        rs_runtime_s: mean(rows.iter().filter_map(|r| r.rs_runtime_s).collect()),
        ls_best_cut: None,
        reference_cut: None,
        reference_kind: None,
        error: (failed > 0).then(|| format!("{failed} of {} runs failed", rows.len())),
    }
}

/// One row per (graph, repeat) in input order, then the summary row.
pub fn run_compare(
    graphs: &[(String, Graph)],
    cfg: &DcConfig,
    repeats: usize,
    timing: Timing,
) -> Vec<CompareRow> {
    let mut rows: Vec<CompareRow> = graphs
        .par_iter()
        .map(|(name, g)| graph_rows(name, g, cfg, repeats, timing))
        .collect::<Vec<_>>()
        .concat();
    rows.push(summary(&rows));
    rows
}
