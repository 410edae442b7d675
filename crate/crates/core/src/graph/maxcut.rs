use super::Graph;
use crate::error::{Error, Result};
use crate::solution::CutAssignment;

/// Default node limit for exhaustive search.
pub const BRUTE_FORCE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCut {
    pub value: usize,
    /// Every optimal assignment, complements included, in ascending order.
    pub optimal: Vec<CutAssignment>,
}

pub fn brute_force_maxcut(g: &Graph) -> Result<MaxCut> {
    brute_force_maxcut_with_limit(g, BRUTE_FORCE_LIMIT)
}

/// Exhaustive MaxCut over the `2^(n-1)` assignments that put the smallest
/// label on side `0`, walked in Gray-code order so each step flips one bit.
pub fn brute_force_maxcut_with_limit(g: &Graph, limit: usize) -> Result<MaxCut> {
    let n = g.node_count();
    if n > limit || n > 63 {
        return Err(Error::TooLarge {
            what: "exhaustive MaxCut",
            nodes: n,
            limit: limit.min(63),
        });
    }
    if n == 0 {
        return Ok(MaxCut {
            value: 0,
            optimal: vec![CutAssignment::from_bits(Vec::new())],
        });
    }
    let adj = g.adjacency();
    let mut side = vec![false; n];
    let mut mask: u64 = 0;
    let mut cut = 0usize;
    let mut best = 0usize;
    let mut best_masks = vec![0u64];
    for step in 1u64..(1u64 << (n - 1)) {
        let pos = 1 + step.trailing_zeros() as usize;
        let (same, diff) = adj[pos].iter().fold((0usize, 0usize), |(s, d), &w| {
            if side[w] == side[pos] {
                (s + 1, d)
            } else {
                (s, d + 1)
            }
        });
        cut = cut + same - diff;
        side[pos] = !side[pos];
        mask ^= 1 << pos;
        if cut > best {
            best = cut;
            best_masks.clear();
        }
        if cut == best {
            best_masks.push(mask);
        }
    }
    let mut optimal: Vec<CutAssignment> = best_masks
        .into_iter()
        .flat_map(|m| {
            let a = CutAssignment::from_bits((0..n).map(|i| m >> i & 1 == 1).collect());
            let c = a.complement();
            [a, c]
        })
        .collect();
    optimal.sort();
    Ok(MaxCut {
        value: best,
        optimal,
    })
}
