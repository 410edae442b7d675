//! Metrics and the JSON report emitted by `dcqaoa solve`.

use dcqaoa::baselines::{greedy_local_search, random_search};
use dcqaoa::graph::{brute_force_maxcut, BRUTE_FORCE_LIMIT};
use dcqaoa::partition::PartitionTree;
use dcqaoa::solution::{best_sampled_cut, expectation_value};
use dcqaoa::{DcConfig, Graph, SolutionMap};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const REPORT_SCHEMA: &str = "dcqaoa-report/1";

/// Restarts for the long local search that backs large-graph references.
pub const REFERENCE_RESTARTS: usize = 200;

/// SHA-256 of the canonical edge list.
pub fn graph_hash(g: &Graph) -> String {
    let digest = Sha256::digest(g.to_edge_list().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    /// Exhaustive optimum.
    BruteForce,
    /// Best cut found by any method in the experiment: a lower bound on the
    /// optimum, so ratios against it are upper bounds.
    BestOfSuite,
}

impl ReferenceKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::BruteForce => "brute_force",
            Self::BestOfSuite => "best_of_suite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub cut: usize,
    pub kind: ReferenceKind,
}

/// The optimum when exhaustive search is feasible; otherwise the best of
/// `found`, a long local search and `random_budget` random draws.
pub fn reference_cut(g: &Graph, found: &[usize], random_budget: u64, seed: u64) -> Reference {
    if g.node_count() <= BRUTE_FORCE_LIMIT {
        let cut = brute_force_maxcut(g).expect("size checked").value;
        return Reference { cut, kind: ReferenceKind::BruteForce };
    }
    let ls = greedy_local_search(g, REFERENCE_RESTARTS, seed).expect("restarts > 0");
    let rs = random_search(g, random_budget.max(1), seed).expect("budget > 0");
    let cut = found.iter().copied().chain([ls.best_cut, rs.best_cut]).max().unwrap_or(0);
    Reference { cut, kind: ReferenceKind::BestOfSuite }
}

/// `value / reference`, with an edgeless graph counting as solved.
pub fn ratio(value: f64, reference: usize) -> f64 {
    if reference == 0 {
        1.0
    } else {
        value / reference as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub nodes: usize,
    pub edges: usize,
    pub sha256: String,
}

impl GraphInfo {
    pub fn of(g: &Graph) -> Self {
        Self {
            nodes: g.node_count(),
            edges: g.edge_count(),
            sha256: graph_hash(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub max_cut_reference: usize,
    pub reference_kind: ReferenceKind,
    pub expectation_value: f64,
    pub best_sampled_cut: usize,
    pub ar_expectation: f64,
    pub ar_best_sampled: f64,
    pub nrl: f64,
    /// Divergence from a direct QAOA run on the whole graph, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kl: Option<f64>,
    pub runtime_seconds: f64,
}

impl Metrics {
    pub fn compute(
        g: &Graph,
        solution: &SolutionMap,
        tree: &PartitionTree,
        reference: Reference,
        runtime_seconds: f64,
    ) -> dcqaoa::Result<Self> {
        let ev = expectation_value(g, solution)?;
        let best = best_sampled_cut(g, solution)?.map_or(0, |(_, c)| c);
        // A reference drawn from the run itself can never sit below it.
        let reference = Reference {
            cut: reference.cut.max(best),
            ..reference
        };
        Ok(Self {
            max_cut_reference: reference.cut,
            reference_kind: reference.kind,
            expectation_value: ev,
            best_sampled_cut: best,
            ar_expectation: ratio(ev, reference.cut),
            ar_best_sampled: ratio(best as f64, reference.cut),
            nrl: tree.nrl(),
            kl: None,
            runtime_seconds,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub graph: GraphInfo,
    pub config: DcConfig,
    pub metrics: Metrics,
    pub solution: SolutionMap,
    pub partition: PartitionTree,
}
