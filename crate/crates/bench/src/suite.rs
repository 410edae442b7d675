//! Default benchmark instances.

use dcqaoa::graph::random_graph;
use dcqaoa::partition::recursive_split;
use dcqaoa::{Graph, Result};

pub const SUITE_SIZES: [usize; 7] = [16, 24, 32, 40, 48, 56, 64];

/// Average degree of the suite graphs. Denser graphs quickly exceed the
/// path-separator connectivity limit at k = 8.
pub const SUITE_DEGREE: f64 = 3.0;

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub seed: u64,
    pub graph: Graph,
}

/// First connected G(n, p) draw at or after `seed` that splits all the way
/// down to pieces of at most `k` nodes.
pub fn partitionable_graph(n: usize, edge_prob: f64, seed: u64, k: usize) -> Result<(u64, Graph)> {
    let mut seed = seed;
    loop {
        let g = random_graph(n, edge_prob, seed)?;
        if n <= k || recursive_split(&g, k).is_ok() {
            return Ok((seed, g));
        }
        seed += 1;
    }
}

pub fn suite_edge_prob(n: usize) -> f64 {
    (SUITE_DEGREE / (n as f64 - 1.0)).min(1.0)
}

/// Seven connected sparse random graphs, 16 to 64 nodes, each splittable at
/// qubit budget `k`.
pub fn default_suite(k: usize) -> Result<Vec<Instance>> {
    SUITE_SIZES
        .iter()
        .map(|&n| {
            let (seed, graph) = partitionable_graph(n, suite_edge_prob(n), 1000 * n as u64, k)?;
            Ok(Instance {
                name: format!("er{n}"),
                seed,
                graph,
            })
        })
        .collect()
}
