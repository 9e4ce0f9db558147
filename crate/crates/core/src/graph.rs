//! Undirected simple graphs over dense vertex indices with bit-packed
//! adjacency rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FormatError;

/// Vertices are dense indices `0..n`.
pub type Vertex = usize;

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A subset of `0..capacity`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    capacity: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            capacity,
            words: vec![0; words_for(capacity)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = VertexSet::new(capacity);
        for v in 0..capacity {
            set.insert(v);
        }
        set
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(capacity: usize, vertices: I) -> Self {
        let mut set = VertexSet::new(capacity);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Returns `true` if `v` was newly inserted.
    ///
    /// Panics if `v` is outside the capacity.
    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(
            v < self.capacity,
            "vertex {v} out of range 0..{}",
            self.capacity
        );
        let word = &mut self.words[v / WORD_BITS];
        let bit = 1u64 << (v % WORD_BITS);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        if v >= self.capacity {
            return false;
        }
        let word = &mut self.words[v / WORD_BITS];
        let bit = 1u64 << (v % WORD_BITS);
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.capacity && self.words[v / WORD_BITS] & (1u64 << (v % WORD_BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the set bits of a word slice, ascending.
pub struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Each vertex owns a row of `ceil(n / 64)` words, so pair lookup is O(1)
/// and `|N(v) ∩ X|` is a popcount over one row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            rows: vec![0; stride * n],
            degrees: vec![0; n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, ignoring duplicates.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, FormatError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Adds `uv`; returns `Ok(false)` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, FormatError> {
        if u >= self.n || v >= self.n {
            return Err(FormatError::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(FormatError::SelfLoop { vertex: u });
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.insert_unchecked(u, v);
        Ok(true)
    }

    fn insert_unchecked(&mut self, u: Vertex, v: Vertex) {
        self.rows[u * self.stride + v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        self.rows[v * self.stride + u / WORD_BITS] |= 1u64 << (u % WORD_BITS);
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.edge_count += 1;
    }

    /// Copy of `self` with the edge `uv` added.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, FormatError> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n
            && v < self.n
            && self.rows[u * self.stride + v / WORD_BITS] & (1u64 << (v % WORD_BITS)) != 0
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Adjacency row of `v` as words.
    #[inline]
    pub fn row(&self, v: Vertex) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub fn neighbors(&self, v: Vertex) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    pub fn neighbor_set(&self, v: Vertex) -> VertexSet {
        VertexSet {
            capacity: self.n,
            words: self.row(v).to_vec(),
        }
    }

    /// `|N(v) ∩ set|` by popcount.
    #[inline]
    pub fn neighbors_in(&self, v: Vertex, set: &VertexSet) -> usize {
        self.row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `N(X)`: every vertex with a neighbor in `set`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for v in set.iter() {
            for (a, b) in out.words.iter_mut().zip(self.row(v)) {
                *a |= b;
            }
        }
        out
    }

    /// `d(X)`: sum of degrees over `vertices`.
    pub fn degree_sum<I: IntoIterator<Item = Vertex>>(&self, vertices: I) -> usize {
        vertices.into_iter().map(|v| self.degrees[v]).sum()
    }

    pub fn is_independent(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &a)| {
            vertices[i + 1..]
                .iter()
                .all(|&b| a != b && !self.has_edge(a, b))
        })
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Result of [`neighbor_multiplicity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity {
    pub exactly: VertexSet,
    pub at_least: VertexSet,
}

/// `N_k(X)` and `N_{≥k}(X)`: vertices with exactly / at least `k` neighbors
/// in `set`. Members of `set` are not excluded.
pub fn neighbor_multiplicity(g: &Graph, set: &VertexSet, k: usize) -> Multiplicity {
    let mut exactly = VertexSet::new(g.n());
    let mut at_least = VertexSet::new(g.n());
    for x in 0..g.n() {
        let c = g.neighbors_in(x, set);
        if c == k {
            exactly.insert(x);
        }
        if c >= k {
            at_least.insert(x);
        }
    }
    Multiplicity { exactly, at_least }
}

/// Connectivity verdict; a disconnected graph carries the component of
/// its lowest vertex as witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    Connected,
    Disconnected { component: Vec<Vertex> },
}

impl Connectivity {
    pub fn is_connected(&self) -> bool {
        matches!(self, Connectivity::Connected)
    }
}

/// The component of `start`.
pub fn component_of(g: &Graph, start: Vertex) -> VertexSet {
    let mut seen = VertexSet::new(g.n());
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

pub fn is_connected(g: &Graph) -> Connectivity {
    if g.n() <= 1 {
        return Connectivity::Connected;
    }
    let comp = component_of(g, 0);
    if comp.len() == g.n() {
        Connectivity::Connected
    } else {
        Connectivity::Disconnected {
            component: comp.to_vec(),
        }
    }
}

/// Parses `n` on the first line followed by whitespace-separated `u v`
/// pairs, one per line. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line_no, header) = lines.next().ok_or(FormatError::Empty)?;
    let n: usize = header.parse().map_err(|_| FormatError::BadLine {
        line: line_no,
        content: header.to_string(),
    })?;
    let mut g = Graph::new(n);
    for (line_no, line) in lines {
        let bad = || FormatError::BadLine {
            line: line_no,
            content: line.to_string(),
        };
        let mut parts = line.split_whitespace();
        let u: Vertex = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let v: Vertex = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() {
            return Err(bad());
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Inverse of [`parse_edge_list`] for an explicit edge set.
pub fn write_edge_list<I>(n: usize, edges: I) -> String
where
    I: IntoIterator<Item = (Vertex, Vertex)>,
{
    let mut out = format!("{n}\n");
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
