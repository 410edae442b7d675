//! Parameter sweeps: one row per (axis value, repeat).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use dcqaoa::seed::derive_seed;
use dcqaoa::solution::{best_sampled_cut, expectation_value};
use dcqaoa::{dc_qaoa, DcConfig, Graph};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{ratio, reference_cut, Reference};
use crate::Timing;

pub const SWEEP_SCHEMA: &str = "sweep/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    K,
    T,
    S,
    P,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::K => "k",
            Axis::T => "t",
            Axis::S => "s",
            Axis::P => "p",
        }
    }

    fn apply(self, cfg: &DcConfig, value: u64) -> DcConfig {
        let mut cfg = cfg.clone();
        match self {
            Axis::K => cfg.k = value as usize,
            Axis::T => cfg.t = value as usize,
            Axis::S => cfg.s = value,
            Axis::P => cfg.p = value as usize,
        }
        cfg
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "k" => Ok(Axis::K),
            "t" => Ok(Axis::T),
            "s" => Ok(Axis::S),
            "p" => Ok(Axis::P),
            other => Err(format!("unknown sweep axis '{other}' (expected k, t, s or p)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub schema: &'static str,
    pub axis: &'static str,
    pub value: u64,
    pub repeat: usize,
    pub seed: u64,
    pub nrl: Option<f64>,
    pub ev: Option<f64>,
    pub best_cut: Option<usize>,
    pub ar_expectation: Option<f64>,
    pub ar_best_sampled: Option<f64>,
    pub reference_cut: usize,
    pub reference_kind: &'static str,
    pub runtime_s: f64,
    pub error: Option<String>,
}

struct Trial {
    value: u64,
    repeat: usize,
    seed: u64,
    outcome: Result<Outcome, String>,
    runtime_s: f64,
}

struct Outcome {
    nrl: f64,
    ev: f64,
    best: usize,
    tree_size: usize,
}

/// Runs `dc_qaoa` for every value and repeat. Repeat `r` uses the same seed
/// at every value, so differences along the axis are paired. Failed runs
/// become rows with the error text and no metrics.
pub fn run_sweep(
    g: &Graph,
    base: &DcConfig,
    axis: Axis,
    values: &[u64],
    repeats: usize,
    timing: Timing,
) -> Vec<SweepRow> {
    let jobs: Vec<(u64, usize)> = values
        .iter()
        .flat_map(|&v| (0..repeats).map(move |r| (v, r)))
        .collect();
    let results: Vec<Trial> = jobs
        .par_iter()
        .map(|&(value, repeat)| {
            let seed = derive_seed(base.seed, [repeat as u64]);
            let cfg = DcConfig { seed, ..axis.apply(base, value) };
            let start = Instant::now();
            let outcome = dc_qaoa(g, &cfg).map_err(|e| e.to_string()).and_then(|run| {
                let ev = expectation_value(g, &run.solution).map_err(|e| e.to_string())?;
                let best = best_sampled_cut(g, &run.solution)
                    .map_err(|e| e.to_string())?
                    .map_or(0, |(_, c)| c);
                Ok(Outcome {
                    nrl: run.tree.nrl(),
                    ev,
                    best,
                    tree_size: run.tree.size(),
                })
            });
            Trial {
                value,
                repeat,
                seed,
                outcome,
                runtime_s: timing.seconds(start),
            }
        })
        .collect();

    let found: Vec<usize> = results
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|o| o.best))
        .collect();
    let budget = results
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|o| o.tree_size as u64))
        .max()
        .unwrap_or(1)
        * base.s;
    let Reference { cut, kind } = reference_cut(g, &found, budget, base.seed);

    results
        .into_iter()
        .map(|t| {
            let (metrics, error) = match t.outcome {
                Ok(o) => (Some(o), None),
                Err(e) => (None, Some(e)),
            };
            SweepRow {
                schema: SWEEP_SCHEMA,
                axis: axis.name(),
                value: t.value,
                repeat: t.repeat,
                seed: t.seed,
                nrl: metrics.as_ref().map(|o| o.nrl),
                ev: metrics.as_ref().map(|o| o.ev),
                best_cut: metrics.as_ref().map(|o| o.best),
                ar_expectation: metrics.as_ref().map(|o| ratio(o.ev, cut)),
                ar_best_sampled: metrics.as_ref().map(|o| ratio(o.best as f64, cut)),
                reference_cut: cut,
                reference_kind: kind.name(),
                runtime_s: t.runtime_s,
                error,
            }
        })
        .collect()
}

/// Mean of `field` over successful rows at each value, in value order.
pub fn means_by_value(rows: &[SweepRow], field: impl Fn(&SweepRow) -> Option<f64>) -> Vec<(u64, Option<f64>)> {
    let mut values: Vec<u64> = rows.iter().map(|r| r.value).collect();
    values.dedup();
    values
        .into_iter()
        .map(|v| {
            let xs: Vec<f64> = rows.iter().filter(|r| r.value == v).filter_map(&field).collect();
            let mean = (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);
            (v, mean)
        })
        .collect()
}
