//! Dynamic Graph Coloring: repair a coloring after a batch of edge
//! insertions, recoloring few vertices and staying under a color ceiling.
//!
//! An instance pairs a base graph with a proper coloring and a target graph
//! that adds `edit_k` edges. Only the added edges can be monochromatic, so
//! recoloring a vertex cover of those conflict edges is enough to restore
//! properness; [`cover`] finds such covers with bounded search trees and
//! [`solve`] recolors them.

pub mod cover;
pub mod solve;

use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::graph::{Edge, Graph, VertexId};

pub use cover::{enumerate_covers, min_vertex_cover};
pub use solve::{dgc_solve, dgc_solve_with, DgcLimits};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgcError {
    #[error("base graph has {base} vertices, target graph has {target}")]
    VertexCountMismatch { base: usize, target: usize },
    #[error("base coloring covers {found} vertices, graphs have {expected}")]
    ColoringLength { expected: usize, found: usize },
    #[error("base edge {0:?} is missing from the target graph")]
    NotSuperset(Edge),
    #[error("base coloring is improper on base edge {0:?}")]
    ImproperBase(Edge),
    #[error("recolor budget {increment_r} exceeds twice the edit distance {edit_k}")]
    BudgetTooLarge { increment_r: usize, edit_k: usize },
    #[error("target color count must be positive")]
    ZeroTargetColors,
}

/// A validated repair problem. See the module docs.
#[derive(Debug, Clone)]
pub struct DgcInstance<'a> {
    base_graph: &'a Graph,
    target_graph: &'a Graph,
    base_coloring: &'a Coloring,
    added_edges: Vec<Edge>,
    increment_r: usize,
    target_colors: Color,
}

impl<'a> DgcInstance<'a> {
    pub fn new(
        base_graph: &'a Graph,
        target_graph: &'a Graph,
        base_coloring: &'a Coloring,
        increment_r: usize,
        target_colors: Color,
    ) -> Result<Self, DgcError> {
        let n = base_graph.vertex_count();
        if target_graph.vertex_count() != n {
            return Err(DgcError::VertexCountMismatch {
                base: n,
                target: target_graph.vertex_count(),
            });
        }
        if base_coloring.len() != n {
            return Err(DgcError::ColoringLength {
                expected: n,
                found: base_coloring.len(),
            });
        }
        if target_colors == 0 {
            return Err(DgcError::ZeroTargetColors);
        }
        for &(u, v) in base_graph.edges() {
            if !target_graph.has_edge(u, v) {
                return Err(DgcError::NotSuperset((u, v)));
            }
            if base_coloring.color(u) == base_coloring.color(v) {
                return Err(DgcError::ImproperBase((u, v)));
            }
        }
        let added_edges: Vec<Edge> = target_graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| !base_graph.has_edge(u, v))
            .collect();
        if increment_r > 2 * added_edges.len() {
            return Err(DgcError::BudgetTooLarge {
                increment_r,
                edit_k: added_edges.len(),
            });
        }
        Ok(Self {
            base_graph,
            target_graph,
            base_coloring,
            added_edges,
            increment_r,
            target_colors,
        })
    }

    pub fn base_graph(&self) -> &Graph {
        self.base_graph
    }

    pub fn target_graph(&self) -> &Graph {
        self.target_graph
    }

    pub fn base_coloring(&self) -> &Coloring {
        self.base_coloring
    }

    /// Edges in the target graph but not the base graph, in target order.
    pub fn added_edges(&self) -> &[Edge] {
        &self.added_edges
    }

    pub fn edit_k(&self) -> usize {
        self.added_edges.len()
    }

    pub fn increment_r(&self) -> usize {
        self.increment_r
    }

    pub fn target_colors(&self) -> Color {
        self.target_colors
    }
}

/// Added edges that are monochromatic under the base coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictSubgraph {
    pub conflict_edges: Vec<Edge>,
    /// Sorted, distinct endpoints of `conflict_edges`.
    pub touched_vertices: Vec<VertexId>,
}

impl ConflictSubgraph {
    pub fn from_edges(conflict_edges: Vec<Edge>) -> Self {
        let mut touched: Vec<VertexId> = conflict_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        touched.sort_unstable();
        touched.dedup();
        Self {
            conflict_edges,
            touched_vertices: touched,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.conflict_edges.is_empty()
    }
}

pub fn conflict_subgraph(inst: &DgcInstance<'_>) -> ConflictSubgraph {
    let c = inst.base_coloring;
    ConflictSubgraph::from_edges(
        inst.added_edges
            .iter()
            .copied()
            .filter(|&(u, v)| c.color(u) == c.color(v))
            .collect(),
    )
}
