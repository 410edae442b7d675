use super::{Graph, Node};
use crate::error::{Error, Result};

/// Parses whitespace-separated edge lists.
///
/// Each line holds either an edge `u v` or a single isolated node `u`.
/// Everything after `#` is a comment; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Node>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("expected a non-negative integer, found {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match tokens.as_slice() {
            [u] => nodes.push(*u),
            [u, v] => edges.push((*u, *v)),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected one or two tokens, found {}", tokens.len()),
                })
            }
        }
    }
    Graph::new(nodes, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle() {
        let g = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn duplicate_edge_is_rejected() {
        assert!(matches!(parse_edge_list("0 1\n0 1"), Err(Error::Validation(_))));
    }

    #[test]
    fn empty_input() {
        let g = parse_edge_list("").unwrap();
        assert_eq!(g.node_count(), 0);
    }

    #[test]
    fn comments_and_isolated_nodes() {
        let g = parse_edge_list("# header\n3 4  # trailing\n\n7\n").unwrap();
        assert_eq!(g.nodes(), &[3, 4, 7]);
        assert_eq!(g.edges(), &[(3, 4)]);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        assert_eq!(
            parse_edge_list("0 1\n1 x\n"),
            Err(Error::Parse {
                line: 2,
                message: "expected a non-negative integer, found \"x\"".into()
            })
        );
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("4 4"), Err(Error::Validation(_))));
    }

    proptest! {
        #[test]
        fn canonical_round_trip(
            extra in proptest::collection::btree_set(0u32..40, 0..5),
            pairs in proptest::collection::btree_set((0u32..30, 0u32..30), 0..60),
        ) {
            let edges: std::collections::BTreeSet<_> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            let g = Graph::new(extra, edges).unwrap();
            prop_assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
        }
    }
}
