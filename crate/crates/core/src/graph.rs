//! Undirected simple graphs, vertex sets and the graph Laplacian.
//!
//! Vertices are 1-based (`v1..vn`) everywhere in the public API. The
//! edge-list text format read by [`parse_graph`] is:
//!
//! ```text
//! # comment
//! n 3
//! e 1 2
//! e 2 3
//! ```

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Sorted set of 1-based vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let set: BTreeSet<usize> = vertices.into_iter().collect();
        Self(set.into_iter().collect())
    }

    /// All vertices `v1..vn`.
    pub fn full(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// Decodes a bitmask where bit `i` stands for vertex `v(i+1)`.
    pub fn from_mask(mask: u64) -> Self {
        Self(
            (0..64)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect(),
        )
    }

    /// Bitmask encoding; `None` when a member exceeds `v64`.
    pub fn to_mask(&self) -> Option<u64> {
        self.0.iter().try_fold(0u64, |acc, &v| {
            (1..=64).contains(&v).then(|| acc | 1u64 << (v - 1))
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn complement(&self, n: usize) -> Self {
        Self((1..=n).filter(|&v| !self.contains(v)).collect())
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> Self {
        Self::from_vertices(self.iter().chain(other.iter()))
    }

    /// Ordering used in reports: ascending cardinality, then lexicographic.
    pub fn report_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    pub(crate) fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&v| v == 0 || v > n) {
            Some(&v) => Err(Error::VertexOutOfRange {
                vertex: v,
                order: n,
            }),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_vertices(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "v{v}")?;
        }
        f.write_str("}")
    }
}

/// Undirected, unweighted simple graph on vertices `v1..vn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    // 0-based, each pair stored with i < j, sorted
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from 1-based edge pairs, rejecting self-loops,
    /// duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut builder = Builder::new(n)?;
        for &(a, b) in edges {
            builder.add(a, b).map_err(Error::InvalidArgument)?;
        }
        Ok(builder.finish())
    }

    /// The path `P_n` with edges `v_i v_{i+1}`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &edges)
    }

    /// Graph from distinct 0-based pairs with `i < j`, no validation.
    pub(crate) fn from_pairs_unchecked(n: usize, pairs: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &pairs {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        let mut edges = pairs;
        edges.sort_unstable();
        Self {
            n,
            edges,
            adjacency,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 1-based pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(i, j)| (i + 1, j + 1))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b
            && (1..=self.n).contains(&a)
            && (1..=self.n).contains(&b)
            && self.adjacency[a - 1].binary_search(&(b - 1)).is_ok()
    }

    /// Neighbours of `v`, 1-based, ascending.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v - 1].iter().map(|&u| u + 1)
    }

    /// Neighbourhood bitmasks (bit `i` = vertex `v(i+1)`); requires `n <= 64`.
    pub(crate) fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.adjacency
            .iter()
            .map(|a| a.iter().fold(0u64, |m, &u| m | 1 << u))
            .collect()
    }

    /// `N_S(v)`: neighbours of `v` inside `s`.
    pub fn neighbors_in(&self, v: usize, s: &VertexSet) -> Result<VertexSet> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        Ok(self.neighbors(v).filter(|&u| s.contains(u)).collect())
    }

    /// Breadth-first connectivity check.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// `L = Δ − D`.
    pub fn laplacian(&self) -> SymmetricMatrix {
        let mut l = DMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            l[(i, j)] = -1.0;
            l[(j, i)] = -1.0;
        }
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            l[(v, v)] = nbrs.len() as f64;
        }
        SymmetricMatrix::from_trusted(l)
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (i, j) in self.edges() {
            out.push_str(&format!("e {i} {j}\n"));
        }
        out
    }
}

struct Builder {
    n: usize,
    seen: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "vertex count must be positive".into(),
            ));
        }
        Ok(Self {
            n,
            seen: BTreeSet::new(),
        })
    }

    fn add(&mut self, a: usize, b: usize) -> std::result::Result<(), String> {
        for v in [a, b] {
            if v == 0 || v > self.n {
                return Err(format!("vertex {v} out of range 1..={}", self.n));
            }
        }
        if a == b {
            return Err(format!("self-loop on vertex {a}"));
        }
        let key = (a.min(b) - 1, a.max(b) - 1);
        if !self.seen.insert(key) {
            return Err(format!("duplicate edge {{{a},{b}}}"));
        }
        Ok(())
    }

    fn finish(self) -> Graph {
        Graph::from_pairs_unchecked(self.n, self.seen.into_iter().collect())
    }
}

/// Parses the line-oriented edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut builder: Option<Builder> = None;
    let err = |line: usize, message: String| Error::Parse { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        let args: Vec<&str> = tokens.collect();
        let parse_index = |s: &str| {
            s.parse::<usize>().map_err(|_| {
                err(
                    line_no,
                    format!("expected a non-negative integer, found `{s}`"),
                )
            })
        };

        match (tag, &mut builder) {
            ("n", None) => {
                if args.len() != 1 {
                    return Err(err(line_no, "expected `n <count>`".into()));
                }
                let n = parse_index(args[0])?;
                builder = Some(Builder::new(n).map_err(|e| err(line_no, e.to_string()))?);
            }
            ("n", Some(_)) => return Err(err(line_no, "vertex count declared twice".into())),
            ("e", Some(b)) => {
                if args.len() != 2 {
                    return Err(err(line_no, "expected `e <i> <j>`".into()));
                }
                let (i, j) = (parse_index(args[0])?, parse_index(args[1])?);
                b.add(i, j).map_err(|m| err(line_no, m))?;
            }
            ("e", None) => return Err(err(line_no, "edge before vertex count declaration".into())),
            (other, _) => return Err(err(line_no, format!("unknown record `{other}`"))),
        }
    }

    builder.map(Builder::finish).ok_or_else(|| {
        err(
            text.lines().count().max(1),
            "missing `n <count>` line".into(),
        )
    })
}
