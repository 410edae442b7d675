//! Depth-`p` QAOA for MaxCut on a dense statevector, with multi-start
//! simplex parameter search and seeded measurement sampling.

pub mod nelder_mead;
mod statevector;

pub use statevector::{
    apply_cost_layer, apply_mixer_layer, build_initial_state, CutTable, Statevector, MAX_QUBITS,
};

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::derive_seed;
use crate::solution::{Count, CutAssignment, SolutionMap};

/// Per-layer `(gamma, beta)` angles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams {
    layers: Vec<(f64, f64)>,
}

impl AnsatzParams {
    pub fn new(layers: Vec<(f64, f64)>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Contract("ansatz needs at least one layer".into()));
        }
        if layers.iter().any(|(g, b)| !g.is_finite() || !b.is_finite()) {
            return Err(Error::Contract("ansatz angles must be finite".into()));
        }
        Ok(Self { layers })
    }

    /// All-zero angles at depth `p`.
    pub fn zeros(p: usize) -> Result<Self> {
        Self::new(vec![(0.0, 0.0); p])
    }

    /// From `[gamma_1, beta_1, gamma_2, beta_2, ...]`.
    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        if !flat.len().is_multiple_of(2) {
            return Err(Error::Contract("flat angle vector has odd length".into()));
        }
        Self::new(flat.chunks(2).map(|c| (c[0], c[1])).collect())
    }

    pub fn flat(&self) -> Vec<f64> {
        self.layers.iter().flat_map(|&(g, b)| [g, b]).collect()
    }

    pub fn layers(&self) -> &[(f64, f64)] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Same angles folded into `gamma in [0, 2pi)`, `beta in [0, pi)`. The
    /// expectation is periodic in both, so this changes nothing physical.
    pub fn wrapped(&self) -> Self {
        Self {
            layers: self
                .layers
                .iter()
                .map(|&(g, b)| (g.rem_euclid(TAU), b.rem_euclid(PI)))
                .collect(),
        }
    }
}

/// Final state of the circuit: uniform superposition followed by `p`
/// alternating cost and mixer layers.
pub fn final_state(table: &CutTable, params: &AnsatzParams) -> Result<Statevector> {
    let mut s = evolve(table, params)?;
    s.normalize();
    Ok(s)
}

// Runs the circuit on the all-ones register; callers normalize.
fn evolve(table: &CutTable, params: &AnsatzParams) -> Result<Statevector> {
    let mut s = Statevector::unnormalized_uniform(table.qubits())?;
    for &(gamma, beta) in params.layers() {
        s.apply_cost(table, gamma);
        s.apply_mixer(beta);
    }
    Ok(s)
}

/// Exact expected cut of the final state.
pub fn qaoa_expectation(g: &Graph, params: &AnsatzParams) -> Result<f64> {
    let table = CutTable::new(g)?;
    Ok(evolve(&table, params)?.expected_cut(&table))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Independent simplex runs from seeded random starting angles.
    pub restarts: usize,
    /// Objective evaluations allowed per restart.
    pub budget: usize,
    /// Simplex stops once vertex expectations agree within this.
    pub tolerance: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 5,
            budget: 200,
            tolerance: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizedAnsatz {
    pub params: AnsatzParams,
    pub expectation: f64,
    pub evaluations: usize,
}

/// Maximizes the exact expectation over `2p` angles.
pub fn optimize_params(
    g: &Graph,
    p: usize,
    cfg: &OptimizerConfig,
    seed: u64,
) -> Result<OptimizedAnsatz> {
    if p == 0 {
        return Err(Error::Contract("circuit depth must be at least 1".into()));
    }
    let table = CutTable::new(g)?;
    optimize_with_table(&table, p, cfg, seed)
}

fn optimize_with_table(
    table: &CutTable,
    p: usize,
    cfg: &OptimizerConfig,
    seed: u64,
) -> Result<OptimizedAnsatz> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<Vec<f64>> = (0..cfg.restarts.max(1))
        .map(|_| {
            (0..p)
                .flat_map(|_| [rng.gen_range(0.0..TAU), rng.gen_range(0.0..PI)])
                .collect()
        })
        .collect();
    let step: Vec<f64> = (0..p).flat_map(|_| [0.5, 0.25]).collect();

    let objective = |x: &[f64]| -> f64 {
        let params = AnsatzParams::from_flat(x).expect("even-length angle vector");
        match evolve(table, &params) {
            Ok(s) => -s.expected_cut(table),
            Err(_) => f64::INFINITY,
        }
    };
    let runs: Vec<nelder_mead::SimplexResult> = starts
        .par_iter()
        .map(|x0| nelder_mead::minimize(objective, x0, &step, cfg.budget, cfg.tolerance))
        .collect();

    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    // First run wins ties so the choice is schedule independent.
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .expect("at least one restart");
    Ok(OptimizedAnsatz {
        params: AnsatzParams::from_flat(&best.x)?.wrapped(),
        expectation: -best.value,
        evaluations,
    })
}

/// Draws `shots` measurement outcomes of the final state.
pub fn sample_solution_map(
    g: &Graph,
    params: &AnsatzParams,
    shots: u64,
    seed: u64,
) -> Result<SolutionMap> {
    let table = CutTable::new(g)?;
    sample_with_table(g, &table, params, shots, seed)
}

fn sample_with_table(
    g: &Graph,
    table: &CutTable,
    params: &AnsatzParams,
    shots: u64,
    seed: u64,
) -> Result<SolutionMap> {
    if shots == 0 {
        return Err(Error::Contract("at least one shot is required".into()));
    }
    let state = evolve(table, params)?;
    let mut cumulative = state.probabilities();
    let mut acc = 0.0;
    for p in cumulative.iter_mut() {
        acc += *p;
        *p = acc;
    }
    let last = cumulative.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: HashMap<usize, Count> = HashMap::new();
    for _ in 0..shots {
        let u = rng.gen::<f64>() * acc;
        let idx = cumulative.partition_point(|&c| c <= u).min(last);
        *counts.entry(idx).or_default() += 1;
    }
    let n = g.node_count();
    Ok(SolutionMap::from_sorted_parts(
        g.nodes().to_vec(),
        counts
            .into_iter()
            .map(|(i, c)| (CutAssignment::from_index(i as u64, n), c))
            .collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaConfig {
    pub p: usize,
    pub shots: u64,
    pub optimizer: OptimizerConfig,
}

impl Default for QaoaConfig {
    fn default() -> Self {
        Self {
            p: 3,
            shots: 1000,
            optimizer: OptimizerConfig::default(),
        }
    }
}

/// Optimizes the angles, then samples; the map comes back count-sorted.
pub fn qaoa_maxcut(g: &Graph, cfg: &QaoaConfig, seed: u64) -> Result<SolutionMap> {
    Ok(qaoa_solve(g, cfg, seed)?.samples)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaRun {
    pub ansatz: OptimizedAnsatz,
    pub samples: SolutionMap,
}

pub fn qaoa_solve(g: &Graph, cfg: &QaoaConfig, seed: u64) -> Result<QaoaRun> {
    if cfg.p == 0 {
        return Err(Error::Contract("circuit depth must be at least 1".into()));
    }
    let table = CutTable::new(g)?;
    let ansatz = optimize_with_table(&table, cfg.p, &cfg.optimizer, derive_seed(seed, [1]))?;
    let samples = sample_with_table(g, &table, &ansatz.params, cfg.shots, derive_seed(seed, [2]))?;
    Ok(QaoaRun { ansatz, samples })
}
