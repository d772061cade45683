use crate::coloring::{Color, Coloring};
use crate::graph::VertexId;

/// A single vertex recolor performed while adding an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Recolor {
    pub vertex: VertexId,
    pub from: Color,
    pub to: Color,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeOutcome {
    pub recolored: Option<Recolor>,
    pub color_added: bool,
}

/// Proper coloring of a growing edge set. Starts with every vertex on
/// color 1 and no edges.
#[derive(Debug, Clone)]
pub struct IncrementalColorer {
    adjacency: Vec<Vec<VertexId>>,
    colors: Vec<Color>,
    used: Color,
    stamp: Vec<u32>,
    epoch: u32,
    edges_added: usize,
}

impl IncrementalColorer {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); vertex_count],
            colors: vec![1; vertex_count],
            used: 1,
            stamp: vec![0; 2],
            epoch: 0,
            edges_added: 0,
        }
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn used(&self) -> Color {
        self.used
    }

    pub fn edges_added(&self) -> usize {
        self.edges_added
    }

    pub fn coloring(&self) -> Coloring {
        Coloring::from_colors(self.colors.clone()).expect("incremental coloring stays contiguous")
    }

    /// Replaces the coloring (after an accepted repair). The caller
    /// guarantees it is proper on the current edge set.
    pub fn set_coloring(&mut self, coloring: &Coloring) {
        self.colors.copy_from_slice(coloring.colors());
        self.used = coloring.used();
    }

    fn smallest_free_around(&mut self, v: VertexId) -> Option<Color> {
        if self.stamp.len() < self.used as usize + 2 {
            self.stamp.resize(self.used as usize + 2, 0);
        }
        self.epoch += 1;
        for &w in &self.adjacency[v] {
            self.stamp[self.colors[w] as usize] = self.epoch;
        }
        (1..=self.used).find(|&c| self.stamp[c as usize] != self.epoch)
    }

    /// Adds `{u, v}`. On a clash, recolors `u` to its smallest free existing
    /// color, failing that `v`, failing that opens a new color on `u`.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeOutcome {
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.edges_added += 1;
        if self.colors[u] != self.colors[v] {
            return EdgeOutcome {
                recolored: None,
                color_added: false,
            };
        }
        let from = self.colors[u];
        for w in [u, v] {
            if let Some(to) = self.smallest_free_around(w) {
                self.colors[w] = to;
                return EdgeOutcome {
                    recolored: Some(Recolor {
                        vertex: w,
                        from,
                        to,
                    }),
                    color_added: false,
                };
            }
        }
        self.used += 1;
        self.colors[u] = self.used;
        EdgeOutcome {
            recolored: Some(Recolor {
                vertex: u,
                from,
                to: self.used,
            }),
            color_added: true,
        }
    }
}
