use std::collections::BTreeSet;

use dcqaoa::graph::random_graph;
use dcqaoa::partition::{nlgp, recursive_split};
use dcqaoa::{Error, Graph, Node};
use proptest::prelude::*;

/// Component count by union-find, independent of the library's DFS.
fn component_count(g: &Graph, removed: &[Node]) -> usize {
    let keep: Vec<Node> = g.nodes().iter().copied().filter(|n| !removed.contains(n)).collect();
    let mut parent: Vec<usize> = (0..keep.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in g.edges() {
        if let (Ok(a), Ok(b)) = (keep.binary_search(&u), keep.binary_search(&v)) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    (0..keep.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Does any ordering of `length` distinct nodes forming a simple path split
/// `g` into exactly two components? Brute force over sequences.
fn some_path_splits(g: &Graph, length: usize) -> bool {
    fn go(g: &Graph, length: usize, seq: &mut Vec<Node>) -> bool {
        if seq.len() == length {
            return component_count(g, seq) == 2;
        }
        for &v in g.nodes() {
            if seq.contains(&v) {
                continue;
            }
            if let Some(&last) = seq.last() {
                if !g.has_edge(last, v) {
                    continue;
                }
            }
            seq.push(v);
            if go(g, length, seq) {
                return true;
            }
            seq.pop();
        }
        false
    }
    go(g, length, &mut Vec::new())
}

fn check_separation(g: &Graph, k: usize) -> Result<(), TestCaseError> {
    let s = match nlgp(g, k) {
        Ok(s) => s,
        Err(Error::ConnectivityExceeded { .. }) => {
            if g.node_count() > 12 {
                return Ok(());
            }
            for len in 1..k {
                prop_assert!(!some_path_splits(g, len));
            }
            return Ok(());
        }
        Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
    };
    let sep: BTreeSet<Node> = s.separator.iter().copied().collect();
    let n1: BTreeSet<Node> = s.first.nodes().iter().copied().collect();
    let n2: BTreeSet<Node> = s.second.nodes().iter().copied().collect();
    let all: BTreeSet<Node> = g.nodes().iter().copied().collect();

    prop_assert!(sep.is_subset(&n1) && sep.is_subset(&n2));
    prop_assert_eq!(n1.union(&n2).copied().collect::<BTreeSet<_>>(), all);
    prop_assert_eq!(n1.intersection(&n2).copied().collect::<BTreeSet<_>>(), sep.clone());

    let e1: BTreeSet<_> = s.first.edges().iter().copied().collect();
    let e2: BTreeSet<_> = s.second.edges().iter().copied().collect();
    prop_assert!(e1.is_disjoint(&e2));
    prop_assert_eq!(e1.union(&e2).copied().collect::<Vec<_>>(), g.edges().to_vec());

    for &(u, v) in g.edges() {
        let side = |x: Node| (n1.contains(&x) && !sep.contains(&x), n2.contains(&x) && !sep.contains(&x));
        let (a, b) = (side(u), side(v));
        prop_assert!(!(a.0 && b.1) && !(a.1 && b.0), "crossing edge ({}, {})", u, v);
    }
    for w in s.separator.windows(2) {
        prop_assert!(g.has_edge(w[0], w[1]));
    }
    prop_assert_eq!(component_count(g, &s.separator), 2);
    let rest = g.without_nodes(&s.separator).connected_components();
    let side1: Vec<Node> = n1.difference(&sep).copied().collect();
    let side2: Vec<Node> = n2.difference(&sep).copied().collect();
    prop_assert_eq!(rest, vec![side1, side2]);

    if g.node_count() <= 12 {
        for len in 1..s.separator.len() {
            prop_assert!(!some_path_splits(g, len), "shorter separator of length {} exists", len);
        }
    }
    prop_assert_eq!(nlgp(g, k).unwrap(), s);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn separation_invariants(n in 4usize..=30, p in 0.08f64..0.5, seed in 0u64..10_000, k in 3usize..=8) {
        // A dense 30-node graph with no short separator costs every path of
        // up to k-1 nodes; keep larger graphs sparse.
        let p = if n > 12 { (p * 6.0 / n as f64).max((n as f64).ln() / n as f64) } else { p };
        let g = random_graph(n, p, seed).unwrap();
        prop_assume!(g.node_count() > k);
        check_separation(&g, k)?;
    }
}

#[test]
fn k5_has_no_short_separator() {
    let g = Graph::complete(5);
    for len in 1..4 {
        assert!(!some_path_splits(&g, len));
    }
    assert!(matches!(nlgp(&g, 4), Err(Error::ConnectivityExceeded { .. })));
}

#[test]
fn recursive_nrl_falls_with_k() {
    // Sparse graphs with long chordless cycles have no short path separator,
    // so walk seeds until one splits all the way down at the smallest k.
    let g = (0..)
        .map(|seed| random_graph(32, 3.0 / 31.0, seed).unwrap())
        .find(|g| recursive_split(g, 5).is_ok())
        .unwrap();
    let nrls: Vec<f64> = [5, 6, 7, 8]
        .into_iter()
        .map(|k| {
            let tree = recursive_split(&g, k).unwrap();
            assert!(tree.leaf_sizes().iter().all(|&s| s <= k));
            tree.nrl()
        })
        .collect();
    assert!(nrls.iter().all(|&r| r >= 1.0));
    assert!(nrls[3] < nrls[0], "{nrls:?}");
}
