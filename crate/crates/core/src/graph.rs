//! Simple undirected graphs on dense vertex indices.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;

/// Hard upper bound on the number of vertices. Adjacency rows are single `u64` words.
pub const MAX_VERTICES: usize = 64;

const NO_EDGE: u16 = u16::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("degree statistics are undefined for the empty graph")]
    Empty,
    #[error("{u}{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },
}

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            assert_eq!(self.1, v, "vertex {v} is not an endpoint of {self:?}");
            self.0
        }
    }

    pub fn has(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub max_degree: usize,
    pub min_degree: usize,
    pub degrees: Vec<usize>,
}

/// Immutable simple graph. Edges are numbered `0..m` in lexicographic order of `(u, v)`, `u < v`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    edge_ids: Vec<u16>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate pairs collapse; loops are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut rows = vec![VertexSet::EMPTY; n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    pub(crate) fn from_rows(rows: Vec<VertexSet>) -> Self {
        let n = rows.len();
        let neighbors: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().collect()).collect();
        let mut edges = Vec::new();
        let mut edge_ids = vec![NO_EDGE; n * n];
        for u in 0..n {
            for v in rows[u].iter().filter(|&v| v > u) {
                let id = edges.len() as u16;
                edge_ids[u * n + v] = id;
                edge_ids[v * n + u] = id;
                edges.push(Edge(u, v));
            }
        }
        Graph {
            n,
            rows,
            neighbors,
            edges,
            edge_ids,
        }
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(n, std::iter::empty())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.edge_ids[u * self.n + v] {
            NO_EDGE => None,
            id => Some(id as usize),
        }
    }

    pub fn require_edge(&self, u: usize, v: usize) -> Result<usize, GraphError> {
        self.edge_id(u, v).ok_or(GraphError::NotAnEdge { u, v })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::below(self.n)
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Neighborhood as a bitset row.
    pub fn adjacency(&self, v: usize) -> VertexSet {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        let degrees: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        Ok(DegreeStats {
            max_degree: *degrees.iter().max().unwrap(),
            min_degree: *degrees.iter().min().unwrap(),
            degrees,
        })
    }

    /// Common neighbourhood of a vertex set: a single AND per member.
    pub fn common_neighbors(&self, vs: &[usize]) -> VertexSet {
        vs.iter()
            .fold(self.all_vertices(), |acc, &v| acc & self.rows[v])
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next |= self.rows[v];
            }
            frontier = next - seen;
            seen |= next;
        }
        seen.len() == self.n
    }

    /// Copy of the graph without the given edge.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.require_edge(u, v)?;
        let mut rows = self.rows.clone();
        rows[u].remove(v);
        rows[v].remove(u);
        Ok(Graph::from_rows(rows))
    }

    /// Copy of the graph with vertex `v` deleted; later vertices shift down by one.
    pub fn without_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.has(v))
            .map(|e| (relabel(e.0), relabel(e.1)));
        Graph::new(self.n - 1, edges)
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: VertexSet) -> usize {
        set.iter().map(|v| (self.rows[v] & set).len()).sum::<usize>() / 2
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn degree_stats_k4_and_star() {
        let s = k4().degree_stats().unwrap();
        assert_eq!((s.max_degree, s.min_degree), (3, 3));
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = star.degree_stats().unwrap();
        assert_eq!((s.max_degree, s.min_degree), (3, 1));
        assert_eq!(s.degrees, vec![3, 1, 1, 1]);
    }

    #[test]
    fn empty_graph_has_no_stats() {
        assert_eq!(Graph::empty(0).unwrap().degree_stats(), Err(GraphError::Empty));
    }

    #[test]
    fn rejects_loops_and_range() {
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::Loop(1)));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(Graph::empty(65).is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::new(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_id(1, 0), Some(0));
    }

    #[test]
    fn edge_ids_are_lexicographic() {
        let g = k4();
        assert_eq!(g.edges()[0], Edge(0, 1));
        assert_eq!(g.edges()[5], Edge(2, 3));
        for (id, e) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_id(e.0, e.1), Some(id));
            assert_eq!(g.edge_id(e.1, e.0), Some(id));
        }
    }

    #[test]
    fn connectivity_and_deletions() {
        let g = k4();
        assert!(g.is_connected());
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_connected());
        let h = g.without_edge(0, 1).unwrap();
        assert_eq!(h.edge_count(), 5);
        assert!(g.without_edge(0, 0).is_err());
        let p = g.without_vertex(0).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.edge_count(), 3);
    }

    #[test]
    fn common_neighbors_by_word_and() {
        let g = k4();
        assert_eq!(g.common_neighbors(&[0, 1]).iter().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(g.edges_within(VertexSet::below(3)), 3);
    }
}
