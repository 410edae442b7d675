//! Path-shaped node separators (naive large-graph partitioning).
//!
//! A separator is a simple path whose removal leaves exactly two connected
//! components. Both halves keep a copy of the separator nodes, so no edge is
//! lost and no edge crosses between the two non-shared sides.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Node};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationResult {
    pub separator: Vec<Node>,
    /// Component with the smallest label, plus the separator. Owns the
    /// edges internal to the separator.
    pub first: Graph,
    pub second: Graph,
}

impl SeparationResult {
    pub fn parts(&self) -> [&Graph; 2] {
        [&self.first, &self.second]
    }
}

/// Calls `visit` for every simple path of `length` nodes, each path listed
/// once (the orientation with the smaller end label first), in ascending
/// lexicographic order of node sequence. Stops early on `Break`.
pub fn visit_paths<B>(
    g: &Graph,
    length: usize,
    mut visit: impl FnMut(&[Node]) -> ControlFlow<B>,
) -> Option<B> {
    if length == 0 {
        return None;
    }
    let adj = g.adjacency();
    let labels = g.nodes();
    let mut on_path = vec![false; labels.len()];
    let mut path = Vec::with_capacity(length);

    fn extend<B>(
        adj: &[Vec<usize>],
        labels: &[Node],
        length: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        visit: &mut impl FnMut(&[Node]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if path.len() == length {
            if length == 1 || path[0] < path[length - 1] {
                let nodes: Vec<Node> = path.iter().map(|&p| labels[p]).collect();
                return visit(&nodes);
            }
            return ControlFlow::Continue(());
        }
        let last = *path.last().unwrap();
        for &next in &adj[last] {
            if on_path[next] {
                continue;
            }
            on_path[next] = true;
            path.push(next);
            let flow = extend(adj, labels, length, on_path, path, visit);
            path.pop();
            on_path[next] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    for start in 0..labels.len() {
        on_path[start] = true;
        path.push(start);
        let flow = extend(&adj, labels, length, &mut on_path, &mut path, &mut visit);
        path.pop();
        on_path[start] = false;
        if let ControlFlow::Break(b) = flow {
            return Some(b);
        }
    }
    None
}

/// All simple paths with exactly `length` distinct nodes, deduplicated up to
/// reversal, in lexicographic order.
pub fn enumerate_paths(g: &Graph, length: usize) -> Vec<Vec<Node>> {
    let mut out = Vec::new();
    visit_paths::<()>(g, length, |p| {
        out.push(p.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Splits `g` along the first separator path (shortest first, then
/// lexicographic) that leaves exactly two components. Separator lengths
/// `1..k` are tried.
pub fn nlgp(g: &Graph, k: usize) -> Result<SeparationResult> {
    let n = g.node_count();
    if k == 0 || n <= k {
        return Err(Error::Contract(format!(
            "partitioning needs 1 <= k < n (k={k}, n={n})"
        )));
    }
    for length in 1..k {
        let found = visit_paths(g, length, |path| {
            let comps = g.without_nodes(path).connected_components();
            if comps.len() == 2 {
                ControlFlow::Break((path.to_vec(), comps))
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some((separator, comps)) = found {
            let result = split(g, separator, &comps[0]);
            if result.first.node_count() >= n || result.second.node_count() >= n {
                return Err(Error::NoProgress { nodes: n });
            }
            return Ok(result);
        }
    }
    Err(Error::ConnectivityExceeded {
        k,
        nodes: n,
        smallest: g.nodes().first().copied(),
    })
}

fn split(g: &Graph, separator: Vec<Node>, first_side: &[Node]) -> SeparationResult {
    let in_sep = |n: &Node| separator.contains(n);
    let in_first = |n: &Node| first_side.binary_search(n).is_ok();

    let mut first_nodes: Vec<Node> = first_side.iter().chain(&separator).copied().collect();
    first_nodes.sort_unstable();
    let mut second_nodes: Vec<Node> = g
        .nodes()
        .iter()
        .copied()
        .filter(|n| !in_first(n))
        .collect();
    second_nodes.sort_unstable();

    let (first_edges, second_edges): (Vec<_>, Vec<_>) = g
        .edges()
        .iter()
        .copied()
        .partition(|(u, v)| in_first(u) || in_first(v) || (in_sep(u) && in_sep(v)));

    SeparationResult {
        separator,
        first: Graph::from_parts(first_nodes, first_edges),
        second: Graph::from_parts(second_nodes, second_edges),
    }
}

/// Node redundancy level: total node count of the parts over the original
/// node count.
pub fn nrl<'a>(original: &Graph, parts: impl IntoIterator<Item = &'a Graph>) -> Result<f64> {
    let mut total = 0usize;
    let mut any = false;
    for p in parts {
        total += p.node_count();
        any = true;
    }
    if !any || original.is_empty() {
        return Err(Error::Contract("NRL needs a non-empty graph and at least one part".into()));
    }
    Ok(total as f64 / original.node_count() as f64)
}

/// Recursive split record; leaves are the pieces small enough to solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionTree {
    pub nodes: Vec<Node>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub separator: Vec<Node>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<PartitionTree>,
}

impl PartitionTree {
    pub fn leaf(nodes: Vec<Node>) -> Self {
        Self {
            nodes,
            separator: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaf_sizes(&self) -> Vec<usize> {
        if self.is_leaf() {
            vec![self.nodes.len()]
        } else {
            self.children.iter().flat_map(|c| c.leaf_sizes()).collect()
        }
    }

    /// Leaf node total over this node's size.
    pub fn nrl(&self) -> f64 {
        self.leaf_sizes().iter().sum::<usize>() as f64 / self.nodes.len().max(1) as f64
    }

    /// Number of tree nodes (solved leaves plus reconstruction steps).
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

/// Splits recursively until every piece has at most `k` nodes.
pub fn recursive_split(g: &Graph, k: usize) -> Result<PartitionTree> {
    if g.node_count() <= k {
        return Ok(PartitionTree::leaf(g.nodes().to_vec()));
    }
    let sep = nlgp(g, k)?;
    Ok(PartitionTree {
        nodes: g.nodes().to_vec(),
        children: vec![recursive_split(&sep.first, k)?, recursive_split(&sep.second, k)?],
        separator: sep.separator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::toy_graph;

    #[test]
    fn paths_in_triangle() {
        let g = Graph::complete(3);
        assert_eq!(enumerate_paths(&g, 1), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(enumerate_paths(&g, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(enumerate_paths(&g, 3), vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2]]);
        assert!(enumerate_paths(&g, 0).is_empty());
        assert!(enumerate_paths(&g, 4).is_empty());
    }

    #[test]
    fn path_graph_paths() {
        assert_eq!(enumerate_paths(&Graph::path(3), 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn toy_graph_splits_on_node_two() {
        let s = nlgp(&toy_graph(), 4).unwrap();
        assert_eq!(s.separator, vec![2]);
        assert_eq!(s.first.nodes(), &[0, 1, 2]);
        assert_eq!(s.first.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(s.second.nodes(), &[2, 3, 4]);
        assert_eq!(s.second.edges(), &[(2, 3), (3, 4)]);
        assert!((nrl(&toy_graph(), s.parts()).unwrap() - 1.2).abs() < 1e-12);
    }

    #[test]
    fn path_of_three() {
        let s = nlgp(&Graph::path(3), 2).unwrap();
        assert_eq!(s.separator, vec![1]);
        assert_eq!(s.first.nodes(), &[0, 1]);
        assert_eq!(s.second.nodes(), &[1, 2]);
    }

    #[test]
    fn k5_exceeds_connectivity() {
        assert!(matches!(
            nlgp(&Graph::complete(5), 4),
            Err(Error::ConnectivityExceeded { k: 4, nodes: 5, .. })
        ));
    }

    #[test]
    fn separator_internal_edges_go_to_first() {
        // 0-1-2-3-4 path plus chord 1-3 and pendant 2-5: separator [1, 2, 3]
        // style splits must keep every edge exactly once.
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (1, 3), (2, 5)]).unwrap();
        let s = nlgp(&g, 4).unwrap();
        let mut all: Vec<_> = s.first.edges().iter().chain(s.second.edges()).copied().collect();
        all.sort_unstable();
        assert_eq!(all, g.edges());
    }

    #[test]
    fn rejects_small_graphs() {
        assert!(matches!(nlgp(&Graph::path(3), 3), Err(Error::Contract(_))));
        assert!(matches!(nlgp(&Graph::path(3), 0), Err(Error::Contract(_))));
    }

    #[test]
    fn nrl_identity_and_errors() {
        let g = toy_graph();
        assert_eq!(nrl(&g, [&g]).unwrap(), 1.0);
        assert!(nrl(&g, std::iter::empty()).is_err());
    }

    #[test]
    fn recursive_split_of_long_path() {
        let t = recursive_split(&Graph::path(10), 3).unwrap();
        assert!(t.leaf_sizes().iter().all(|&s| s <= 3));
        assert!(t.nrl() > 1.0);
        assert_eq!(recursive_split(&Graph::path(3), 3).unwrap(), PartitionTree::leaf(vec![0, 1, 2]));
    }
}
