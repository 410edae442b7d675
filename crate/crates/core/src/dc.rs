//! Recursive divide-and-conquer driver: split with [`nlgp`], solve the small
//! pieces with QAOA, merge sub-solutions with [`combine`], then re-rank,
//! keep the top `t` entries and rescale to `s` samples at every level.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{nlgp, PartitionTree};
use crate::qaoa::{qaoa_maxcut, OptimizerConfig, QaoaConfig, MAX_QUBITS};
use crate::qsr::{combine, rerank_by_cut, QsrScheme};
use crate::seed::derive_seed;
use crate::solution::{Count, SolutionMap};

/// Evaluations per optimizer restart at the leaves: the initial simplex
/// plus roughly ten Nelder-Mead iterations. Fully converged leaves put all
/// their samples on a handful of optimal cuts, and neighbouring pieces then
/// rarely agree on the shared nodes.
pub const LEAF_BUDGET: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DcConfig {
    /// Circuit depth.
    pub p: usize,
    /// Entries kept after each level.
    pub t: usize,
    /// Shots per leaf and rescale target per level.
    pub s: u64,
    /// Largest subgraph solved directly (qubit budget).
    pub k: usize,
    pub scheme: QsrScheme,
    pub seed: u64,
    pub optimizer: OptimizerConfig,
}

impl Default for DcConfig {
    fn default() -> Self {
        Self {
            p: 3,
            t: 20,
            s: 1000,
            k: 8,
            scheme: QsrScheme::MinXMul,
            seed: 0,
            optimizer: OptimizerConfig {
                budget: LEAF_BUDGET,
                ..OptimizerConfig::default()
            },
        }
    }
}

impl DcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 || self.k > MAX_QUBITS {
            return Err(Error::Contract(format!("k must lie in [2, {MAX_QUBITS}], got {}", self.k)));
        }
        if self.t == 0 || self.s == 0 || self.p == 0 {
            return Err(Error::Contract("p, t and s must all be at least 1".into()));
        }
        Ok(())
    }

    fn qaoa(&self) -> QaoaConfig {
        QaoaConfig {
            p: self.p,
            shots: self.s,
            optimizer: self.optimizer.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DcRun {
    pub solution: SolutionMap,
    pub tree: PartitionTree,
}

/// Solves MaxCut on `g` by recursive splitting and reconstruction.
///
/// The two halves of every split are solved concurrently; each piece draws
/// its randomness from a seed derived from `cfg.seed` and its node labels.
pub fn dc_qaoa(g: &Graph, cfg: &DcConfig) -> Result<DcRun> {
    cfg.validate()?;
    if g.is_empty() {
        return Err(Error::Contract("cannot solve an empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Contract("input graph must be connected".into()));
    }
    let (solution, tree) = solve(g, cfg, 0)?;
    Ok(DcRun { solution, tree })
}

fn solve(g: &Graph, cfg: &DcConfig, depth: usize) -> Result<(SolutionMap, PartitionTree)> {
    let n = g.node_count();
    let (raw, tree) = if n <= cfg.k {
        let seed = derive_seed(cfg.seed, g.nodes().iter().map(|&v| v as u64));
        (qaoa_maxcut(g, &cfg.qaoa(), seed)?, PartitionTree::leaf(g.nodes().to_vec()))
    } else {
        let split = nlgp(g, cfg.k)?;
        let (left, right) = rayon::join(
            || solve(&split.first, cfg, depth + 1),
            || solve(&split.second, cfg, depth + 1),
        );
        let ((m1, t1), (m2, t2)) = (left?, right?);
        let combined = combine(
            &split.first,
            &split.second,
            &weight_map(&m1),
            &weight_map(&m2),
            cfg.scheme,
        )?;
        if combined.is_empty() {
            return Err(Error::ReconstructionFailed { depth, nodes: n });
        }
        let tree = PartitionTree {
            nodes: g.nodes().to_vec(),
            separator: split.separator,
            children: vec![t1, t2],
        };
        (combined, tree)
    };
    let out = rescale(&abridge(&rerank_by_cut(g, &raw)?, cfg.t), cfg.s)?;
    if out.is_empty() {
        return Err(Error::ReconstructionFailed { depth, nodes: n });
    }
    Ok((out, tree))
}

/// Multiplies every count by the assignment length (the subgraph size).
pub fn weight_map(m: &SolutionMap) -> SolutionMap {
    let w = m.nodes().len() as Count;
    m.with_entries(m.iter().map(|(a, c)| (a.clone(), c * w)).collect())
}

/// The first `t` entries in sorted order, minus any zero counts.
pub fn abridge(m: &SolutionMap, t: usize) -> SolutionMap {
    m.with_entries(
        m.entries()
            .iter()
            .take(t)
            .filter(|(_, c)| *c > 0)
            .cloned()
            .collect(),
    )
}

/// Scales counts to `floor(s * v / total)`, dropping entries that reach 0.
pub fn rescale(m: &SolutionMap, s: u64) -> Result<SolutionMap> {
    let total = m.total();
    if total == 0 {
        return Err(Error::Contract("cannot rescale a map with zero total count".into()));
    }
    let s = s as Count;
    Ok(m.with_entries(
        m.iter()
            .map(|(a, v)| (a.clone(), s * v / total))
            .filter(|(_, c)| *c > 0)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{approximation_ratio, CutAssignment, RatioMode};

    fn map(entries: &[(&str, Count)]) -> SolutionMap {
        let n = entries[0].0.len() as u32;
        SolutionMap::from_strs(0..n, entries.iter().copied()).unwrap()
    }

    #[test]
    fn weighting() {
        let m = map(&[("010101", 50), ("111000", 20)]);
        let w = weight_map(&m);
        assert_eq!(w.get(&"010101".parse().unwrap()), Some(300));
        assert_eq!(w.entries()[1].1, 120);
        assert!(weight_map(&SolutionMap::empty(vec![0, 1])).is_empty());
    }

    #[test]
    fn abridging() {
        let small = map(&[("00", 3), ("01", 2), ("10", 1), ("11", 1)]);
        assert_eq!(abridge(&small, 20), small);
        let big = SolutionMap::new(
            0..6,
            (0..50u64).map(|i| (CutAssignment::from_index(i, 6), 100 + i as Count)),
        )
        .unwrap();
        let top = abridge(&big, 20);
        assert_eq!(top.len(), 20);
        assert!(top.iter().all(|(_, c)| c >= 130));
        let zeros = map(&[("00", 3), ("01", 0), ("10", 0)]);
        assert_eq!(abridge(&zeros, 20).len(), 1);
    }

    #[test]
    fn rescaling() {
        let m = map(&[("0", 600), ("1", 400)]);
        assert_eq!(rescale(&m, 1000).unwrap(), m);
        let m = map(&[("0", 3), ("1", 1)]);
        let r = rescale(&m, 1000).unwrap();
        assert_eq!(r, map(&[("0", 750), ("1", 250)]));
        let m = map(&[("00", 1), ("01", 1), ("10", 1)]);
        let r = rescale(&m, 2).unwrap();
        assert!(r.is_empty());
        assert!(rescale(&map(&[("0", 0)]), 5).is_err());
    }

    #[test]
    fn base_case_is_abridged_qaoa() {
        let g = Graph::complete(4);
        let cfg = DcConfig {
            t: 3,
            ..DcConfig::default()
        };
        let run = dc_qaoa(&g, &cfg).unwrap();
        assert!(run.tree.is_leaf());
        let seed = derive_seed(cfg.seed, [0, 1, 2, 3]);
        let raw = qaoa_maxcut(&g, &cfg.qaoa(), seed).unwrap();
        let expect = rescale(&abridge(&rerank_by_cut(&g, &raw).unwrap(), 3), 1000).unwrap();
        assert_eq!(run.solution, expect);
    }

    #[test]
    fn toy_graph_one_level() {
        let g = crate::graph::toy_graph();
        let cfg = DcConfig {
            k: 4,
            ..DcConfig::default()
        };
        let run = dc_qaoa(&g, &cfg).unwrap();
        assert_eq!(run.tree.separator, vec![2]);
        assert!(run.solution.len() <= 20 && run.solution.total() <= 1000);
        assert_eq!(run.solution.nodes(), g.nodes());
        assert_eq!(
            approximation_ratio(&g, &run.solution, RatioMode::BestSampled, None).unwrap(),
            1.0
        );
        assert_eq!(run, dc_qaoa(&g, &cfg).unwrap());
    }

    #[test]
    fn config_and_input_checks() {
        let g = Graph::path(4);
        for bad in [
            DcConfig { k: 1, ..DcConfig::default() },
            DcConfig { t: 0, ..DcConfig::default() },
            DcConfig { s: 0, ..DcConfig::default() },
            DcConfig { p: 0, ..DcConfig::default() },
        ] {
            assert!(dc_qaoa(&g, &bad).is_err());
        }
        let split = Graph::from_edges([(0, 1), (2, 3)]).unwrap();
        assert!(dc_qaoa(&split, &DcConfig::default()).is_err());
        assert!(matches!(
            dc_qaoa(&Graph::complete(5), &DcConfig { k: 4, ..DcConfig::default() }),
            Err(Error::ConnectivityExceeded { .. })
        ));
    }
}
