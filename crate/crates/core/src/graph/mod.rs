//! Finite simple graphs, the zero/one/infinity semimetric on their vertices,
//! and the distance-truncated strong powers `G(n, d)` built from it.

mod edge_list;
mod homomorphism;
pub(crate) mod power;
mod symmetry;

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use edge_list::{parse_edge_list, read_edge_list, write_edge_list};
pub use homomorphism::{find_homomorphism, find_homomorphism_with_budget, Homomorphism};
pub use power::{power_graph, strong_power, word_count, WordCodec};
pub use symmetry::{
    automorphism_group, find_automorphism, is_automorphism, is_edge_transitive,
    is_vertex_transitive, vertex_orbits,
};

/// Symmetry facts a constructor can certify without a search.
///
/// `false` means "not certified", not "known to fail".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KnownSymmetry {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
}

/// A finite simple undirected graph on vertices `0..vertex_count`.
///
/// Adjacency lists are sorted and duplicate free. Equality compares edge sets
/// under the fixed labeling and ignores the label and symmetry hints.
#[derive(Clone)]
pub struct Graph {
    label: String,
    adjacency: Vec<Vec<usize>>,
    known: KnownSymmetry,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("label", &self.label)
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidParameter(
                "a graph needs at least one vertex".into(),
            ));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_adjacency(adjacency, label.into()))
    }

    fn from_adjacency(mut adjacency: Vec<Vec<usize>>, label: String) -> Self {
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        Graph {
            label,
            adjacency,
            known: KnownSymmetry::default(),
        }
    }

    pub(crate) fn with_known(mut self, known: KnownSymmetry) -> Self {
        self.known = known;
        self
    }

    /// The complete graph `K_q`.
    pub fn complete(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("complete(q) needs q >= 1".into()));
        }
        let edges = (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v)));
        Ok(
            Self::from_edges(q, edges, format!("K{q}"))?.with_known(KnownSymmetry {
                vertex_transitive: true,
                edge_transitive: true,
            }),
        )
    }

    /// The cycle `C_m`. `C_1` is a single vertex and `C_2` a single edge.
    pub fn cycle(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("cycle(m) needs m >= 1".into()));
        }
        let edges: Vec<(usize, usize)> = match m {
            1 => vec![],
            2 => vec![(0, 1)],
            _ => (0..m).map(|i| (i, (i + 1) % m)).collect(),
        };
        Ok(
            Self::from_edges(m, edges, format!("C{m}"))?.with_known(KnownSymmetry {
                vertex_transitive: true,
                edge_transitive: true,
            }),
        )
    }

    /// The path on `k` vertices.
    pub fn path(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("path(k) needs k >= 1".into()));
        }
        Self::from_edges(k, (1..k).map(|i| (i - 1, i)), format!("P{k}"))
    }

    /// `k` isolated vertices.
    pub fn edgeless(k: usize) -> Result<Self> {
        Ok(
            Self::from_edges(k, [], format!("E{k}"))?.with_known(KnownSymmetry {
                vertex_transitive: true,
                edge_transitive: true,
            }),
        )
    }

    /// The Kneser graph on the `a`-subsets of `{1..c}`, adjacent when
    /// disjoint. Vertices are numbered in lexicographic order of the subsets.
    pub fn kneser(c: usize, a: usize) -> Result<Self> {
        if a == 0 || c < a {
            return Err(Error::InvalidParameter(format!(
                "kneser(c, a) needs 1 <= a <= c, got c={c}, a={a}"
            )));
        }
        let subsets = kneser_subsets(c, a);
        if subsets.len() > 1_000_000 {
            return Err(Error::SizeCap {
                what: "kneser vertex count",
                requested: subsets.len() as u128,
                cap: 1_000_000,
            });
        }
        let masks: Vec<u64> = subsets
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &e| m | 1 << (e - 1)))
            .collect();
        let mut edges = Vec::new();
        for (i, &mi) in masks.iter().enumerate() {
            for (j, &mj) in masks.iter().enumerate().skip(i + 1) {
                if mi & mj == 0 {
                    edges.push((i, j));
                }
            }
        }
        Ok(
            Self::from_edges(masks.len(), edges, format!("kneser:{c},{a}"))?.with_known(
                KnownSymmetry {
                    vertex_transitive: true,
                    edge_transitive: true,
                },
            ),
        )
    }

    /// Disjoint union of cliques given as `(multiplicity, clique_size)` terms.
    pub fn clique_sum(terms: &[(usize, usize)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter(
                "clique_sum needs at least one term".into(),
            ));
        }
        let mut edges = Vec::new();
        let mut next = 0usize;
        let mut labels = Vec::new();
        for &(mult, size) in terms {
            if mult == 0 || size == 0 {
                return Err(Error::InvalidParameter(format!(
                    "clique_sum term {mult}xK{size}: multiplicity and size must be >= 1"
                )));
            }
            for _ in 0..mult {
                for u in 0..size {
                    for v in u + 1..size {
                        edges.push((next + u, next + v));
                    }
                }
                next += size;
            }
            labels.push(format!("{mult}xK{size}"));
        }
        let uniform = terms.iter().all(|&(_, s)| s == terms[0].1);
        Ok(
            Self::from_edges(next, edges, format!("sum:{}", labels.join("+")))?.with_known(
                KnownSymmetry {
                    vertex_transitive: uniform,
                    edge_transitive: uniform,
                },
            ),
        )
    }

    /// The complement graph.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let adjacency = (0..n)
            .map(|u| {
                let mut it = self.adjacency[u].iter().peekable();
                (0..n)
                    .filter(|&v| {
                        if it.peek() == Some(&&v) {
                            it.next();
                            false
                        } else {
                            v != u
                        }
                    })
                    .collect()
            })
            .collect();
        Graph::from_adjacency(adjacency, format!("complement({})", self.label))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn known_symmetry(&self) -> KnownSymmetry {
        self.known
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        self.adjacency.iter().all(|r| r.len() == k).then_some(k)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Errors with the offending pair if `set` is not independent.
    pub fn check_independent(&self, set: &[usize]) -> Result<()> {
        for &u in set {
            self.check_vertex(u)?;
        }
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if u == v || self.has_edge(u, v) {
                    return Err(Error::NotIndependent(u, v));
                }
            }
        }
        Ok(())
    }

    /// Closed neighborhood `N[S]` as a sorted vertex list.
    pub fn closed_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.vertex_count()];
        for &u in set {
            mark[u] = true;
            for &v in self.neighbors(u) {
                mark[v] = true;
            }
        }
        (0..self.vertex_count()).filter(|&v| mark[v]).collect()
    }

    /// Connected components, each a sorted vertex list, ordered by smallest
    /// vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Recognizes a disjoint union of cliques and returns its
    /// `(clique_size, multiplicity)` profile sorted by clique size.
    pub fn clique_sum_profile(&self) -> Option<Vec<(usize, usize)>> {
        let mut counts = std::collections::BTreeMap::new();
        for comp in self.components() {
            let k = comp.len();
            if comp.iter().any(|&u| self.degree(u) != k - 1) {
                return None;
            }
            *counts.entry(k).or_insert(0usize) += 1;
        }
        Some(counts.into_iter().collect())
    }
}

fn kneser_subsets(c: usize, a: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, c: usize, a: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        let need = a - cur.len();
        for e in start..=c + 1 - need {
            cur.push(e);
            rec(e + 1, c, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if c <= 64 {
        rec(1, c, a, &mut Vec::with_capacity(a), &mut out);
    }
    out
}

/// A semimetric value in `{0, 1, 2, ...} ∪ {∞}`.
///
/// Addition saturates at `Infinite`, which orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtendedDistance {
    Finite(u64),
    Infinite,
}

impl ExtendedDistance {
    pub const ZERO: ExtendedDistance = ExtendedDistance::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedDistance::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedDistance::Finite(d) => Some(d),
            ExtendedDistance::Infinite => None,
        }
    }
}

impl Add for ExtendedDistance {
    type Output = ExtendedDistance;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtendedDistance::Finite(a), ExtendedDistance::Finite(b)) => a
                .checked_add(b)
                .map_or(ExtendedDistance::Infinite, ExtendedDistance::Finite),
            _ => ExtendedDistance::Infinite,
        }
    }
}

impl PartialEq<u64> for ExtendedDistance {
    fn eq(&self, other: &u64) -> bool {
        *self == ExtendedDistance::Finite(*other)
    }
}

impl PartialOrd<u64> for ExtendedDistance {
    fn partial_cmp(&self, other: &u64) -> Option<std::cmp::Ordering> {
        Some(self.cmp(&ExtendedDistance::Finite(*other)))
    }
}

impl fmt::Display for ExtendedDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedDistance::Finite(d) => write!(f, "{d}"),
            ExtendedDistance::Infinite => f.write_str("inf"),
        }
    }
}

/// A word of `n >= 1` base-graph vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SequenceWord(Vec<usize>);

impl SequenceWord {
    pub fn new(symbols: Vec<usize>, base: &Graph) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidParameter("words have length >= 1".into()));
        }
        for &s in &symbols {
            base.check_vertex(s)?;
        }
        Ok(SequenceWord(symbols))
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `0` on the diagonal, `1` on edges, `∞` elsewhere.
pub fn semimetric(g: &Graph, v: usize, w: usize) -> Result<ExtendedDistance> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    Ok(symbol_distance(g, v, w))
}

#[inline]
pub(crate) fn symbol_distance(g: &Graph, v: usize, w: usize) -> ExtendedDistance {
    if v == w {
        ExtendedDistance::ZERO
    } else if g.has_edge(v, w) {
        ExtendedDistance::Finite(1)
    } else {
        ExtendedDistance::Infinite
    }
}

/// Coordinate-wise sum of [`semimetric`], saturating at infinity.
pub fn seq_distance(g: &Graph, x: &SequenceWord, y: &SequenceWord) -> Result<ExtendedDistance> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    for &s in x.symbols().iter().chain(y.symbols()) {
        g.check_vertex(s)?;
    }
    Ok(raw_seq_distance(g, x.symbols(), y.symbols()))
}

pub(crate) fn raw_seq_distance(g: &Graph, x: &[usize], y: &[usize]) -> ExtendedDistance {
    let mut total = 0u64;
    for (&a, &b) in x.iter().zip(y) {
        match symbol_distance(g, a, b) {
            ExtendedDistance::Finite(d) => total += d,
            ExtendedDistance::Infinite => return ExtendedDistance::Infinite,
        }
    }
    ExtendedDistance::Finite(total)
}
