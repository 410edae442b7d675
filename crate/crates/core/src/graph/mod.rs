//! Undirected, unweighted simple graphs over integer node labels.
//!
//! Node labels are kept sorted, so a node's *position* (its rank among the
//! labels) is the index used by [`CutAssignment`](crate::solution::CutAssignment)
//! bits and by statevector basis indices.

mod io;
mod maxcut;
mod random;

pub use io::parse_edge_list;
pub use maxcut::{brute_force_maxcut, brute_force_maxcut_with_limit, MaxCut, BRUTE_FORCE_LIMIT};
pub use random::{random_graph, MAX_GENERATION_ATTEMPTS};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::solution::CutAssignment;

pub type Node = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    nodes: Vec<Node>,
    edges: Vec<(Node, Node)>,
}

impl Graph {
    /// Builds a graph from a node list and an edge list.
    ///
    /// Edges are normalized to `(min, max)`; edge endpoints missing from
    /// `nodes` are added. Self-loops and duplicate edges are rejected.
    pub fn new(
        nodes: impl IntoIterator<Item = Node>,
        edges: impl IntoIterator<Item = (Node, Node)>,
    ) -> Result<Self> {
        let mut node_set: BTreeSet<Node> = nodes.into_iter().collect();
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Validation(format!("self-loop on node {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !edge_set.insert(e) {
                return Err(Error::Validation(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            node_set.insert(u);
            node_set.insert(v);
        }
        Ok(Self {
            nodes: node_set.into_iter().collect(),
            edges: edge_set.into_iter().collect(),
        })
    }

    pub fn from_edges(edges: impl IntoIterator<Item = (Node, Node)>) -> Result<Self> {
        Self::new(std::iter::empty(), edges)
    }

    pub fn complete(n: usize) -> Self {
        let n = n as Node;
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(0..n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        let n = n as Node;
        Self::new(0..n, (1..n).map(|v| (v - 1, v))).expect("path graph is simple")
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: Node) -> bool {
        self.position(node).is_some()
    }

    /// Rank of `node` among the sorted labels.
    pub fn position(&self, node: Node) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Edges expressed as pairs of node positions.
    pub fn edge_positions(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|&(u, v)| (self.nodes.binary_search(&u).unwrap(), self.nodes.binary_search(&v).unwrap()))
            .collect()
    }

    /// Positional adjacency lists, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (a, b) in self.edge_positions() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Graph on `nodes` holding exactly `edges`. Used to assemble partition
    /// halves, where edge ownership is decided by the caller.
    pub(crate) fn from_parts(nodes: Vec<Node>, edges: Vec<(Node, Node)>) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self { nodes, edges }
    }

    /// The graph with `removed` nodes and their incident edges deleted.
    pub fn without_nodes(&self, removed: &[Node]) -> Graph {
        let gone = |n: &Node| removed.contains(n);
        Graph {
            nodes: self.nodes.iter().copied().filter(|n| !gone(n)).collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|(u, v)| !gone(u) && !gone(v))
                .collect(),
        }
    }

    /// Subgraph induced by `keep`.
    pub fn induced(&self, keep: &[Node]) -> Graph {
        let set: BTreeSet<Node> = keep.iter().copied().filter(|n| self.contains(*n)).collect();
        Graph {
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|(u, v)| set.contains(u) && set.contains(v))
                .collect(),
            nodes: set.into_iter().collect(),
        }
    }

    /// Maximal connected components, ordered by smallest member; each
    /// component is sorted.
    pub fn connected_components(&self) -> Vec<Vec<Node>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes.len()];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.nodes.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(self.nodes[v]);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Number of edges whose endpoints fall on different sides of `a`.
    pub fn cut_size(&self, a: &CutAssignment) -> Result<usize> {
        if a.len() != self.nodes.len() {
            return Err(Error::Contract(format!(
                "assignment of length {} for a graph with {} nodes",
                a.len(),
                self.nodes.len()
            )));
        }
        Ok(self.cut_size_unchecked(a))
    }

    pub(crate) fn cut_size_unchecked(&self, a: &CutAssignment) -> usize {
        self.edges
            .iter()
            .filter(|(u, v)| {
                let pu = self.nodes.binary_search(u).unwrap();
                let pv = self.nodes.binary_search(v).unwrap();
                a.bit(pu) != a.bit(pv)
            })
            .count()
    }

    /// Canonical edge-list text: one `u v` line per edge in ascending order,
    /// followed by one line per isolated node.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        let mut touched = vec![false; self.nodes.len()];
        for (a, b) in self.edge_positions() {
            touched[a] = true;
            touched[b] = true;
        }
        for (node, _) in self.nodes.iter().zip(&touched).filter(|(_, t)| !**t) {
            out.push_str(&format!("{node}\n"));
        }
        out
    }
}

/// Shorthand for [`Graph::connected_components`].
pub fn dfs_connected_components(g: &Graph) -> Vec<Vec<Node>> {
    g.connected_components()
}

/// Triangle on {0,1,2} joined to the path 2-3-4. MaxCut 4 with six
/// optimal assignments.
pub fn toy_graph() -> Graph {
    Graph::from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap()
}
