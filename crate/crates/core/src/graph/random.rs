use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Node};
use crate::error::{Error, Result};

pub const MAX_GENERATION_ATTEMPTS: u32 = 10_000;

/// Connected Erdős–Rényi `G(n, p)` sample.
///
/// Disconnected draws are discarded and redrawn with `seed + 1`, `seed + 2`,
/// ... up to [`MAX_GENERATION_ATTEMPTS`].
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Contract("random graph needs at least one node".into()));
    }
    if !(edge_prob > 0.0 && edge_prob <= 1.0) {
        return Err(Error::Contract(format!("edge probability {edge_prob} outside (0, 1]")));
    }
    for attempt in 0..MAX_GENERATION_ATTEMPTS {
        let g = gnp(n, edge_prob, seed.wrapping_add(attempt as u64));
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Generation {
        n,
        edge_prob,
        attempts: MAX_GENERATION_ATTEMPTS,
    })
}

fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n as Node;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_parts((0..n).collect(), edges)
}
