//! Trees inside a host graph and the exchange algebra `T − R + A`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TreeError;
use crate::graph::{write_edge_list, Graph, Vertex, VertexSet};
use crate::leafmin::{ClaimTag, Outcome};

pub type Edge = (Vertex, Vertex);

#[inline]
pub fn normalize((u, v): Edge) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A tree whose vertices and edges belong to `host`. Not necessarily
/// spanning; `is_spanning` says whether it covers the host.
///
/// Values are immutable: exchanges produce new trees.
#[derive(Clone)]
pub struct SpanningTree<'g> {
    host: &'g Graph,
    vertices: VertexSet,
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl<'g> SpanningTree<'g> {
    /// The one-vertex tree `{v}`.
    pub fn singleton(host: &'g Graph, v: Vertex) -> Self {
        assert!(v < host.n(), "vertex {v} outside host");
        SpanningTree {
            host,
            vertices: VertexSet::from_vertices(host.n(), [v]),
            adjacency: vec![Vec::new(); host.n()],
            edge_count: 0,
        }
    }

    /// Tree spanned by `edges`; its vertex set is their endpoints.
    pub fn from_edges<I>(host: &'g Graph, edges: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let vertices = VertexSet::from_vertices(host.n(), edges.iter().flat_map(|&(u, v)| [u, v]));
        Self::build(host, vertices, &edges)
    }

    /// Tree on an explicit vertex set; lets a single vertex stand alone.
    pub fn from_parts<V, E>(host: &'g Graph, vertices: V, edges: E) -> Result<Self, TreeError>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = Edge>,
    {
        let vertices: Vec<Vertex> = vertices.into_iter().collect();
        if let Some(&v) = vertices.iter().find(|&&v| v >= host.n()) {
            return Err(TreeError::NotATree(format!("vertex {v} outside host")));
        }
        let edges: Vec<Edge> = edges.into_iter().collect();
        Self::build(host, VertexSet::from_vertices(host.n(), vertices), &edges)
    }

    /// Spanning tree of `host` parsed from edge-list text.
    pub fn parse_edge_list(host: &'g Graph, text: &str) -> Result<Self, TreeError> {
        let g =
            crate::graph::parse_edge_list(text).map_err(|e| TreeError::NotATree(e.to_string()))?;
        if g.n() != host.n() {
            return Err(TreeError::NotATree(format!(
                "tree declares n = {}, host has {}",
                g.n(),
                host.n()
            )));
        }
        if g.edge_count() == 0 && host.n() == 1 {
            return Ok(Self::singleton(host, 0));
        }
        Self::from_edges(host, g.edges())
    }

    fn build(host: &'g Graph, vertices: VertexSet, edges: &[Edge]) -> Result<Self, TreeError> {
        let mut adjacency = vec![Vec::new(); host.n()];
        for &(u, v) in edges {
            if !host.has_edge(u, v) {
                return Err(TreeError::NotInHost(u, v));
            }
            if !vertices.contains(u) || !vertices.contains(v) {
                return Err(TreeError::NotATree(format!(
                    "edge {u}-{v} leaves the vertex set"
                )));
            }
            if adjacency[u].contains(&v) {
                return Err(TreeError::NotATree(format!("edge {u}-{v} listed twice")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let tree = SpanningTree {
            host,
            vertices,
            adjacency,
            edge_count: edges.len(),
        };
        tree.check_shape()?;
        Ok(tree)
    }

    fn check_shape(&self) -> Result<(), TreeError> {
        let order = self.vertices.len();
        if order == 0 {
            return Err(TreeError::NotATree("empty vertex set".into()));
        }
        if self.edge_count + 1 != order {
            return Err(TreeError::NotATree(format!(
                "{} edges on {} vertices",
                self.edge_count, order
            )));
        }
        let start = self.vertices.iter().next().expect("nonempty");
        let mut seen = VertexSet::new(self.host.n());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != order {
            return Err(TreeError::NotATree(format!(
                "disconnected: reached {} of {} vertices",
                seen.len(),
                order
            )));
        }
        Ok(())
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(v)
    }

    /// Number of vertices, `|V(T)|`.
    pub fn order(&self) -> usize {
        self.edge_count + 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_spanning(&self) -> bool {
        self.order() == self.host.n()
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|l| l.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in self.vertices.iter() {
            out.extend(
                self.adjacency[u]
                    .iter()
                    .filter(|&&v| v > u)
                    .map(|&v| (u, v)),
            );
        }
        out
    }

    /// Degree-one vertices, ascending. A lone vertex has none.
    pub fn leaves(&self) -> Vec<Vertex> {
        self.vertices
            .iter()
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|&v| self.degree(v) == 1)
            .count()
    }

    /// Vertices of tree-degree at least three, ascending.
    pub fn branch_vertices(&self) -> Vec<Vertex> {
        self.vertices
            .iter()
            .filter(|&v| self.degree(v) >= 3)
            .collect()
    }

    /// The unique path from `from` to `to`, both ends included.
    pub fn path(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        assert!(
            self.contains(from) && self.contains(to),
            "path endpoints must lie in the tree"
        );
        if from == to {
            return vec![from];
        }
        let n = self.host.n();
        let mut parent = vec![usize::MAX; n];
        parent[to] = to;
        let mut queue = VecDeque::from([to]);
        while let Some(v) = queue.pop_front() {
            if v == from {
                break;
            }
            for &w in &self.adjacency[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut out = vec![from];
        let mut v = from;
        while v != to {
            v = parent[v];
            out.push(v);
        }
        out
    }

    /// `d_T[u, v]`.
    pub fn distance(&self, u: Vertex, v: Vertex) -> usize {
        self.path(u, v).len() - 1
    }

    /// Applies `T − removed + added`, validating that the result is a tree.
    ///
    /// Also checks the two outcome classes decidable from the new tree
    /// alone: `FourLeaf` must leave at most four leaves on the same vertex
    /// set and `Grow` must add exactly one vertex. The improvement classes
    /// need both decompositions and are checked by the solver.
    pub fn apply(&self, exchange: &Exchange) -> Result<SpanningTree<'g>, TreeError> {
        let bad = |msg: String| {
            Err(TreeError::ExchangeInvalid(format!(
                "{}: {msg}",
                exchange.justification
            )))
        };
        let mut adjacency = self.adjacency.clone();
        let mut vertices = self.vertices.clone();
        for &(u, v) in &exchange.removed {
            let (Some(iu), Some(iv)) = (
                adjacency
                    .get(u)
                    .and_then(|l| l.iter().position(|&x| x == v)),
                adjacency
                    .get(v)
                    .and_then(|l| l.iter().position(|&x| x == u)),
            ) else {
                return bad(format!("removed edge {u}-{v} is not in the tree"));
            };
            adjacency[u].remove(iu);
            adjacency[v].remove(iv);
        }
        for &(u, v) in &exchange.added {
            if !self.host.has_edge(u, v) {
                return bad(format!("added edge {u}-{v} is not in the host"));
            }
            if self.has_edge(u, v) {
                return bad(format!("added edge {u}-{v} is already a tree edge"));
            }
            if adjacency[u].contains(&v) {
                return bad(format!("added edge {u}-{v} listed twice"));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            vertices.insert(u);
            vertices.insert(v);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let edge_count = self.edge_count + exchange.added.len() - exchange.removed.len();
        let next = SpanningTree {
            host: self.host,
            vertices,
            adjacency,
            edge_count,
        };
        if let Err(e) = next.check_shape() {
            return bad(e.to_string());
        }
        match exchange.declared_outcome {
            Outcome::FourLeaf => {
                if next.order() != self.order() || next.leaf_count() > 4 {
                    return bad(format!(
                        "declared four-leaf result has {} leaves on {} vertices (was {})",
                        next.leaf_count(),
                        next.order(),
                        self.order()
                    ));
                }
            }
            Outcome::Grow => {
                if next.order() != self.order() + 1 {
                    return bad(format!(
                        "grow went from {} to {} vertices",
                        self.order(),
                        next.order()
                    ));
                }
            }
            _ => {
                if next.order() != self.order() {
                    return bad("exchange changed the vertex set".into());
                }
            }
        }
        Ok(next)
    }

    /// Edge-list text in the graph format: host order, then one edge per line.
    pub fn to_edge_list(&self) -> String {
        write_edge_list(self.host.n(), self.edges())
    }
}

impl PartialEq for SpanningTree<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.adjacency == other.adjacency
    }
}

impl Eq for SpanningTree<'_> {}

impl fmt::Debug for SpanningTree<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpanningTree")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges())
            .finish()
    }
}

/// An edge exchange tagged with the catalog entry that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
    pub justification: ClaimTag,
    pub declared_outcome: Outcome,
}

impl Exchange {
    pub fn new(
        justification: ClaimTag,
        declared_outcome: Outcome,
        removed: &[Edge],
        added: &[Edge],
    ) -> Self {
        Exchange {
            removed: removed.iter().copied().map(normalize).collect(),
            added: added.iter().copied().map(normalize).collect(),
            justification,
            declared_outcome,
        }
    }
}

/// `T − removed + added`, validated.
pub fn apply_exchange<'g>(
    tree: &SpanningTree<'g>,
    exchange: &Exchange,
) -> Result<SpanningTree<'g>, TreeError> {
    tree.apply(exchange)
}
