//! Exhaustive chromatic number for tiny graphs. Used as a test oracle.

use thiserror::Error;

use crate::coloring::Color;
use crate::graph::{Graph, VertexId};

/// Largest vertex count accepted by [`brute_force_chromatic`].
pub const BRUTE_FORCE_LIMIT: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph has {vertex_count} vertices; exhaustive search is limited to {limit}")]
pub struct TooLarge {
    pub vertex_count: usize,
    pub limit: usize,
}

/// Exact chromatic number by trying k = 1, 2, ... with backtracking.
pub fn brute_force_chromatic(graph: &Graph) -> Result<Color, TooLarge> {
    let n = graph.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(TooLarge {
            vertex_count: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok((1..=n as Color)
        .find(|&k| is_k_colorable(graph, k))
        .unwrap_or(1))
}

pub fn is_k_colorable(graph: &Graph, k: Color) -> bool {
    let mut colors = vec![0 as Color; graph.vertex_count()];
    extend(graph, k, 0, 0, &mut colors)
}

fn extend(graph: &Graph, k: Color, v: VertexId, used: Color, colors: &mut [Color]) -> bool {
    if v == colors.len() {
        return true;
    }
    // New colors are opened in order, so color labels are never permuted.
    for c in 1..=k.min(used + 1) {
        if graph.neighbors(v).iter().all(|&w| colors[w] != c) {
            colors[v] = c;
            if extend(graph, k, v + 1, used.max(c), colors) {
                return true;
            }
            colors[v] = 0;
        }
    }
    false
}
