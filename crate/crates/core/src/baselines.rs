//! Classical MaxCut baselines.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::derive_seed;
use crate::solution::CutAssignment;

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineResult {
    pub best_assignment: CutAssignment,
    pub best_cut: usize,
    pub evaluations: u64,
    pub elapsed: Duration,
}

fn cut_of(edges: &[(usize, usize)], side: &[bool]) -> usize {
    edges.iter().filter(|&&(a, b)| side[a] != side[b]).count()
}

/// Best of `budget` uniformly random assignments (smallest label fixed to
/// side 0). Draws come from one seeded stream, so a larger budget only ever
/// extends the sequence.
pub fn random_search(g: &Graph, budget: u64, seed: u64) -> Result<BaselineResult> {
    if budget == 0 {
        return Err(Error::Contract("random search needs a budget of at least 1".into()));
    }
    let start = Instant::now();
    let n = g.node_count();
    let edges = g.edge_positions();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side = vec![false; n];
    let mut best: Option<(Vec<bool>, usize)> = None;
    for _ in 0..budget {
        for bit in side.iter_mut().skip(1) {
            *bit = rng.gen();
        }
        let c = cut_of(&edges, &side);
        if best.as_ref().is_none_or(|(_, b)| c > *b) {
            best = Some((side.clone(), c));
        }
    }
    let (bits, best_cut) = best.expect("budget >= 1");
    Ok(BaselineResult {
        best_assignment: CutAssignment::from_bits(bits),
        best_cut,
        evaluations: budget,
        elapsed: start.elapsed(),
    })
}

/// Single-flip hill climbing from `restarts` seeded random starts; the
/// best local optimum wins (earliest restart on ties).
pub fn greedy_local_search(g: &Graph, restarts: usize, seed: u64) -> Result<BaselineResult> {
    if restarts == 0 {
        return Err(Error::Contract("local search needs at least one restart".into()));
    }
    let start = Instant::now();
    let adj = g.adjacency();
    let edges = g.edge_positions();
    let runs: Vec<(Vec<bool>, usize, u64)> = (0..restarts as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, [r]));
            let mut side: Vec<bool> = (0..adj.len()).map(|_| rng.gen()).collect();
            let mut evals = 1u64;
            loop {
                let mut improved = false;
                for v in 0..adj.len() {
                    let same = adj[v].iter().filter(|&&w| side[w] == side[v]).count();
                    evals += 1;
                    if 2 * same > adj[v].len() {
                        side[v] = !side[v];
                        improved = true;
                    }
                }
                if !improved {
                    break;
                }
            }
            let c = cut_of(&edges, &side);
            (side, c, evals)
        })
        .collect();
    let evaluations = runs.iter().map(|r| r.2).sum();
    let (bits, best_cut, _) = runs
        .into_iter()
        .reduce(|a, b| if b.1 > a.1 { b } else { a })
        .expect("restarts >= 1");
    Ok(BaselineResult {
        best_assignment: CutAssignment::from_bits(bits),
        best_cut,
        evaluations,
        elapsed: start.elapsed(),
    })
}
