//! Reconstruction of a parent solution map from the maps of two subgraphs
//! that share the separator nodes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Node};
use crate::solution::{Count, CutAssignment, SolutionMap};

/// Rule for the count of a merged pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QsrScheme {
    #[serde(rename = "min")]
    Min,
    #[serde(rename = "mul")]
    Mul,
    #[serde(rename = "sum")]
    Sum,
    /// `min(a, b) * a * b`.
    #[serde(rename = "minXmul")]
    MinXMul,
}

impl QsrScheme {
    pub const ALL: [QsrScheme; 4] = [Self::Min, Self::Mul, Self::Sum, Self::MinXMul];

    pub fn apply(self, a: Count, b: Count) -> Count {
        match self {
            Self::Min => a.min(b),
            Self::Mul => a.saturating_mul(b),
            Self::Sum => a.saturating_add(b),
            Self::MinXMul => a.min(b).saturating_mul(a).saturating_mul(b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Min => "min",
            Self::Mul => "mul",
            Self::Sum => "sum",
            Self::MinXMul => "minXmul",
        }
    }
}

impl fmt::Display for QsrScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QsrScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Contract(format!("unknown reconstruction scheme {s:?}")))
    }
}

#[derive(Clone, Copy)]
enum Source {
    First(usize),
    Second(usize),
}

/// Merges every pair of assignments that agree on all shared nodes.
///
/// The merged assignment covers the sorted union of both node sets, taking
/// each bit from the first map when the node belongs to `g1`. Pairs that
/// disagree on a shared node are dropped; if none agree the result is empty.
pub fn combine(
    g1: &Graph,
    g2: &Graph,
    m1: &SolutionMap,
    m2: &SolutionMap,
    scheme: QsrScheme,
) -> Result<SolutionMap> {
    if m1.nodes() != g1.nodes() || m2.nodes() != g2.nodes() {
        return Err(Error::Contract("solution maps must be keyed on their subgraph".into()));
    }
    let common: Vec<(usize, usize)> = g1
        .nodes()
        .iter()
        .enumerate()
        .filter_map(|(i, n)| g2.position(*n).map(|j| (i, j)))
        .collect();
    if common.is_empty() {
        return Err(Error::Contract("subgraphs share no node".into()));
    }

    let mut union: Vec<Node> = g1.nodes().iter().chain(g2.nodes()).copied().collect();
    union.sort_unstable();
    union.dedup();
    let sources: Vec<Source> = union
        .iter()
        .map(|n| match g1.position(*n) {
            Some(i) => Source::First(i),
            None => Source::Second(g2.position(*n).expect("node from the union")),
        })
        .collect();

    let merged: Vec<(CutAssignment, Count)> = m1
        .entries()
        .par_iter()
        .flat_map_iter(|(a1, c1)| {
            let common = &common;
            let sources = &sources;
            m2.entries().iter().filter_map(move |(a2, c2)| {
                if common.iter().any(|&(i, j)| a1.bit(i) != a2.bit(j)) {
                    return None;
                }
                let bits = sources
                    .iter()
                    .map(|s| match *s {
                        Source::First(i) => a1.bit(i),
                        Source::Second(j) => a2.bit(j),
                    })
                    .collect();
                Some((CutAssignment::from_bits(bits), scheme.apply(*c1, *c2)))
            })
        })
        .collect();
    Ok(SolutionMap::from_sorted_parts(union, merged))
}

/// Re-pairs the map's counts with its assignments so that larger counts go
/// to larger cuts. The support and the multiset of counts are unchanged.
pub fn rerank_by_cut(g: &Graph, m: &SolutionMap) -> Result<SolutionMap> {
    if m.nodes() != g.nodes() {
        return Err(Error::Contract("solution map is keyed on a different node set".into()));
    }
    let mut counts: Vec<Count> = m.iter().map(|(_, c)| c).collect();
    counts.sort_unstable_by(|a, b| b.cmp(a));
    let mut by_cut: Vec<(usize, &CutAssignment)> =
        m.iter().map(|(a, _)| (g.cut_size_unchecked(a), a)).collect();
    by_cut.sort_by(|(ca, a), (cb, b)| cb.cmp(ca).then_with(|| a.cmp(b)));
    Ok(m.with_entries(
        by_cut
            .into_iter()
            .zip(counts)
            .map(|((_, a), c)| (a.clone(), c))
            .collect(),
    ))
}

/// Additive smoothing applied to both distributions before comparison.
pub const KL_SMOOTHING: f64 = 1e-9;

/// `KL(P || Q)` with `P = reconstructed`, `Q = reference`, both normalized
/// over the union of their supports after adding [`KL_SMOOTHING`].
pub fn kl_divergence(reconstructed: &SolutionMap, reference: &SolutionMap) -> Result<f64> {
    if reconstructed.nodes() != reference.nodes() {
        return Err(Error::Contract("distributions over different node sets".into()));
    }
    if reconstructed.is_empty() && reference.is_empty() {
        return Err(Error::Contract("both distributions are empty".into()));
    }
    let mut support: HashMap<&CutAssignment, (Count, Count)> = HashMap::new();
    for (a, c) in reconstructed.iter() {
        support.entry(a).or_default().0 += c;
    }
    for (a, c) in reference.iter() {
        support.entry(a).or_default().1 += c;
    }
    let smooth = |total: Count| {
        move |c: Count| {
            if total == 0 {
                KL_SMOOTHING
            } else {
                c as f64 / total as f64 + KL_SMOOTHING
            }
        }
    };
    let (tp, tq) = (reconstructed.total(), reference.total());
    let (sp, sq) = (smooth(tp), smooth(tq));
    // Deterministic summation order.
    let mut rows: Vec<(&CutAssignment, f64, f64)> = support
        .into_iter()
        .map(|(a, (cp, cq))| (a, sp(cp), sq(cq)))
        .collect();
    rows.sort_by(|x, y| x.0.cmp(y.0));
    let zp: f64 = rows.iter().map(|r| r.1).sum();
    let zq: f64 = rows.iter().map(|r| r.2).sum();
    Ok(rows
        .iter()
        .map(|&(_, p, q)| {
            let (p, q) = (p / zp, q / zq);
            p * (p / q).ln()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::toy_graph;
    use crate::partition::nlgp;

    fn halves() -> (Graph, Graph) {
        let s = nlgp(&toy_graph(), 4).unwrap();
        (s.first, s.second)
    }

    fn strs(m: &SolutionMap) -> Vec<(String, Count)> {
        m.iter().map(|(a, c)| (a.to_string(), c)).collect()
    }

    #[test]
    fn incompatible_shared_bit_gives_empty_map() {
        let (g1, g2) = halves();
        let m1 = SolutionMap::from_strs([0, 1, 2], [("010", 30)]).unwrap();
        let m2 = SolutionMap::from_strs([2, 3, 4], [("110", 20)]).unwrap();
        let out = combine(&g1, &g2, &m1, &m2, QsrScheme::Min).unwrap();
        assert!(out.is_empty());
        assert_eq!(out.nodes(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn compatible_pair_under_each_scheme() {
        let (g1, g2) = halves();
        // Node 2 is position 2 of "011" and position 0 of "110": both '1'.
        let m1 = SolutionMap::from_strs([0, 1, 2], [("011", 30)]).unwrap();
        let m2 = SolutionMap::from_strs([2, 3, 4], [("110", 20)]).unwrap();
        let expect = [
            (QsrScheme::Min, 20),
            (QsrScheme::Mul, 600),
            (QsrScheme::Sum, 50),
            (QsrScheme::MinXMul, 12000),
        ];
        for (scheme, count) in expect {
            let out = combine(&g1, &g2, &m1, &m2, scheme).unwrap();
            assert_eq!(strs(&out), vec![("01110".to_string(), count)], "{scheme}");
        }
    }

    #[test]
    fn needs_a_shared_node() {
        let g1 = Graph::from_edges([(0, 1)]).unwrap();
        let g2 = Graph::from_edges([(2, 3)]).unwrap();
        let m1 = SolutionMap::from_strs([0, 1], [("01", 1)]).unwrap();
        let m2 = SolutionMap::from_strs([2, 3], [("01", 1)]).unwrap();
        assert!(matches!(combine(&g1, &g2, &m1, &m2, QsrScheme::Mul), Err(Error::Contract(_))));
    }

    #[test]
    fn rerank_examples() {
        let g = Graph::complete(3);
        let m = SolutionMap::from_strs([0, 1, 2], [("000", 90), ("011", 10)]).unwrap();
        let r = rerank_by_cut(&g, &m).unwrap();
        assert_eq!(strs(&r), vec![("011".into(), 90), ("000".into(), 10)]);
        assert_eq!(rerank_by_cut(&g, &r).unwrap(), r);
    }

    #[test]
    fn kl_examples() {
        let m = SolutionMap::from_strs([0, 1], [("01", 30), ("10", 10)]).unwrap();
        assert!(kl_divergence(&m, &m).unwrap().abs() < 1e-9);
        let other = SolutionMap::from_strs([0, 1], [("00", 5)]).unwrap();
        let d = kl_divergence(&m, &other).unwrap();
        assert!(d.is_finite() && d > 10.0);
        let e = SolutionMap::empty(vec![0, 1]);
        assert!(kl_divergence(&e, &e).is_err());
        assert!(kl_divergence(&m, &e).unwrap().is_finite());
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in QsrScheme::ALL {
            assert_eq!(s.name().parse::<QsrScheme>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert!("max".parse::<QsrScheme>().is_err());
    }
}
