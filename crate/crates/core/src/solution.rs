//! Cut assignments and sampled solution maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{brute_force_maxcut, Graph, Node};

/// Sample count. Wide because product schemes multiply counts together.
pub type Count = u128;

/// One bit per node position; `true` (`'1'`) puts the node in the cut set.
/// Position `j` is the `j`-th smallest label of the associated node set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutAssignment(Vec<bool>);

impl CutAssignment {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// Decodes a basis index; position 0 is the most significant bit.
    pub fn from_index(index: u64, n: usize) -> Self {
        Self((0..n).map(|j| index >> (n - 1 - j) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| acc << 1 | b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, position: usize) -> bool {
        self.0[position]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| !b).collect())
    }
}

impl fmt::Display for CutAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for CutAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for CutAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Contract(format!("invalid assignment character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// Assignments with counts over a fixed node set.
///
/// Entries are always held sorted: count descending, ties broken by the
/// lexicographically smaller bitstring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolutionMap {
    nodes: Vec<Node>,
    entries: Vec<(CutAssignment, Count)>,
}

impl SolutionMap {
    pub fn new(
        nodes: impl IntoIterator<Item = Node>,
        entries: impl IntoIterator<Item = (CutAssignment, Count)>,
    ) -> Result<Self> {
        let mut nodes: Vec<Node> = nodes.into_iter().collect();
        nodes.sort_unstable();
        if nodes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Contract("duplicate node in solution map node set".into()));
        }
        let mut seen = HashMap::new();
        let mut list = Vec::new();
        for (a, c) in entries {
            if a.len() != nodes.len() {
                return Err(Error::Contract(format!(
                    "assignment {a} has length {} but the node set has {}",
                    a.len(),
                    nodes.len()
                )));
            }
            if seen.insert(a.clone(), ()).is_some() {
                return Err(Error::Contract(format!("duplicate assignment {a}")));
            }
            list.push((a, c));
        }
        Ok(Self::from_sorted_parts(nodes, list))
    }

    /// Builds a map from string keys, e.g. `[("011", 10)]`.
    pub fn from_strs<'a>(
        nodes: impl IntoIterator<Item = Node>,
        entries: impl IntoIterator<Item = (&'a str, Count)>,
    ) -> Result<Self> {
        let parsed = entries
            .into_iter()
            .map(|(s, c)| Ok((s.parse()?, c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nodes, parsed)
    }

    /// Empty map over the given nodes.
    pub fn empty(nodes: Vec<Node>) -> Self {
        Self {
            nodes,
            entries: Vec::new(),
        }
    }

    pub(crate) fn from_sorted_parts(nodes: Vec<Node>, mut entries: Vec<(CutAssignment, Count)>) -> Self {
        entries.sort_by(|(a, ca), (b, cb)| cb.cmp(ca).then_with(|| a.cmp(b)));
        Self { nodes, entries }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn entries(&self) -> &[(CutAssignment, Count)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CutAssignment, Count)> {
        self.entries.iter().map(|(a, c)| (a, *c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> Count {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn get(&self, a: &CutAssignment) -> Option<Count> {
        self.entries.iter().find(|(x, _)| x == a).map(|(_, c)| *c)
    }

    pub fn into_entries(self) -> Vec<(CutAssignment, Count)> {
        self.entries
    }

    /// Replaces the entries, keeping the node set.
    pub(crate) fn with_entries(&self, entries: Vec<(CutAssignment, Count)>) -> Self {
        Self::from_sorted_parts(self.nodes.clone(), entries)
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.nodes != g.nodes() {
            return Err(Error::Contract("solution map is keyed on a different node set".into()));
        }
        Ok(())
    }
}

impl Serialize for SolutionMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Counts<'a>(&'a [(CutAssignment, Count)]);
        impl Serialize for Counts<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (a, c) in self.0 {
                    map.serialize_entry(&a.to_string(), c)?;
                }
                map.end()
            }
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            nodes: &'a [Node],
            counts: Counts<'a>,
        }
        Wire {
            nodes: &self.nodes,
            counts: Counts(&self.entries),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SolutionMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            nodes: Vec<Node>,
            counts: BTreeMap<String, Count>,
        }
        let wire = Wire::deserialize(deserializer)?;
        SolutionMap::from_strs(wire.nodes, wire.counts.iter().map(|(k, v)| (k.as_str(), *v)))
            .map_err(D::Error::custom)
    }
}

/// Count-weighted mean cut size.
pub fn expectation_value(g: &Graph, m: &SolutionMap) -> Result<f64> {
    m.check_graph(g)?;
    let total = m.total();
    if total == 0 {
        return Err(Error::Contract("expectation of an empty solution map".into()));
    }
    let weighted: f64 = m
        .iter()
        .map(|(a, c)| c as f64 * g.cut_size_unchecked(a) as f64)
        .sum();
    Ok(weighted / total as f64)
}

/// Largest cut among sampled assignments with a positive count.
pub fn best_sampled_cut(g: &Graph, m: &SolutionMap) -> Result<Option<(CutAssignment, usize)>> {
    m.check_graph(g)?;
    Ok(m
        .iter()
        .filter(|(_, c)| *c > 0)
        .map(|(a, _)| (a.clone(), g.cut_size_unchecked(a)))
        .fold(None, |best: Option<(CutAssignment, usize)>, (a, c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((a, c)),
        }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioMode {
    Expectation,
    BestSampled,
}

/// Achieved cut over the optimum. Without `known_optimum` the optimum comes
/// from exhaustive search, which refuses large graphs.
pub fn approximation_ratio(
    g: &Graph,
    m: &SolutionMap,
    mode: RatioMode,
    known_optimum: Option<usize>,
) -> Result<f64> {
    let optimum = match known_optimum {
        Some(v) => v,
        None => brute_force_maxcut(g)?.value,
    };
    let achieved = match mode {
        RatioMode::Expectation => expectation_value(g, m)?,
        RatioMode::BestSampled => best_sampled_cut(g, m)?
            .ok_or_else(|| Error::Contract("no sampled assignment".into()))?
            .1 as f64,
    };
    if optimum == 0 {
        return Ok(1.0);
    }
    Ok(achieved / optimum as f64)
}
