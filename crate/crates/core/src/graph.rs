//! Simple undirected graphs with indexed vertices.

use std::collections::HashSet;

use thiserror::Error;

/// 0-based vertex index. DIMACS ids are 1-based and converted at the parser.
pub type VertexId = usize;

/// Unordered vertex pair stored with the smaller endpoint first.
pub type Edge = (VertexId, VertexId);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge endpoint {vertex} out of range for {vertex_count} vertices")]
    EndpointOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
}

/// Immutable simple graph: no loops, no parallel edges.
///
/// The edge list keeps first-occurrence order; adjacency lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<VertexId>>,
    duplicates_merged: usize,
}

impl Graph {
    /// Builds a graph from an edge iterator, merging duplicate and reversed
    /// duplicate edges. The number of merged duplicates is kept in
    /// [`Graph::duplicates_merged`].
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        let mut duplicates = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if seen.insert(e) {
                list.push(e);
            } else {
                duplicates += 1;
            }
        }
        let mut g = Self::from_simple_edges(vertex_count, list);
        g.duplicates_merged = duplicates;
        Ok(g)
    }

    /// Edge-less graph on `vertex_count` vertices.
    pub fn empty(vertex_count: usize) -> Result<Self, GraphError> {
        Self::from_edges(vertex_count, std::iter::empty())
    }

    /// Subgraph on the same vertex set keeping only `edge_indices` (in the
    /// given order). Indices must be distinct.
    pub fn edge_subgraph(&self, edge_indices: &[usize]) -> Self {
        let edges = edge_indices.iter().map(|&i| self.edges[i]).collect();
        Self::from_simple_edges(self.vertex_count, edges)
    }

    // Caller guarantees normalized, distinct, in-range edges.
    fn from_simple_edges(vertex_count: usize, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            vertex_count,
            edges,
            adjacency,
            duplicates_merged: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Maximum degree. Always defined since graphs have at least one vertex.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Number of duplicate edges dropped while building the graph.
    pub fn duplicates_merged(&self) -> usize {
        self.duplicates_merged
    }
}
