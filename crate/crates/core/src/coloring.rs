//! Vertex colorings, properness checks, and the assignment file format.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId};

/// 1-based color label.
pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {found} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {0} has color 0; colors are 1-based")]
    ZeroColor(VertexId),
    #[error("color {0} is unused but a larger color is in use")]
    Gap(Color),
}

/// Vertex to color map whose colors occupy exactly `1..=used`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Color>,
    used: Color,
}

impl Coloring {
    /// Every vertex colored 1.
    pub fn uniform(vertex_count: usize) -> Self {
        Self {
            colors: vec![1; vertex_count],
            used: u32::from(vertex_count > 0),
        }
    }

    /// Accepts `colors` only if they already form the contiguous range `1..=k`.
    pub fn from_colors(colors: Vec<Color>) -> Result<Self, ColoringError> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor(v));
        }
        let used = colors.iter().copied().max().unwrap_or(0);
        let mut present = vec![false; used as usize + 1];
        for &c in &colors {
            present[c as usize] = true;
        }
        if let Some(gap) = (1..=used).find(|&c| !present[c as usize]) {
            return Err(ColoringError::Gap(gap));
        }
        Ok(Self { colors, used })
    }

    /// Relabels arbitrary positive colors onto `1..=k`, preserving their
    /// relative order.
    pub fn normalized(mut colors: Vec<Color>) -> Result<Self, ColoringError> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor(v));
        }
        let mut relabel: BTreeMap<Color, Color> = colors.iter().map(|&c| (c, 0)).collect();
        for (next, slot) in relabel.values_mut().enumerate() {
            *slot = next as Color + 1;
        }
        for c in &mut colors {
            *c = relabel[c];
        }
        Ok(Self {
            used: relabel.len() as Color,
            colors,
        })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.colors[v]
    }

    /// Number of distinct colors.
    pub fn used(&self) -> Color {
        self.used
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn into_colors(self) -> Vec<Color> {
        self.colors
    }

    /// Number of vertices whose colors differ.
    pub fn hamming(&self, other: &Coloring) -> usize {
        hamming(&self.colors, &other.colors)
    }
}

pub(crate) fn hamming(a: &[Color], b: &[Color]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Returns the monochromatic edges among `edge_subset` (edge indices into
/// `graph.edges()`), or among all edges when `None`. An empty result means
/// the coloring is proper relative to that edge set.
pub fn verify(
    graph: &Graph,
    coloring: &Coloring,
    edge_subset: Option<&[usize]>,
) -> Result<Vec<Edge>, ColoringError> {
    if coloring.len() != graph.vertex_count() {
        return Err(ColoringError::LengthMismatch {
            expected: graph.vertex_count(),
            found: coloring.len(),
        });
    }
    let clash = |&(u, v): &Edge| coloring.color(u) == coloring.color(v);
    Ok(match edge_subset {
        Some(indices) => indices
            .iter()
            .map(|&i| graph.edge(i))
            .filter(clash)
            .collect(),
        None => graph.edges().iter().copied().filter(clash).collect(),
    })
}

pub fn is_proper(graph: &Graph, coloring: &Coloring) -> bool {
    verify(graph, coloring, None).is_ok_and(|c| c.is_empty())
}

#[derive(Debug, Error)]
pub enum AssignmentError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: expected `<vertex> <color>`")]
    Malformed { line: usize },
    #[error("line {line}: vertex {vertex} out of range [1, {vertex_count}]")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("line {line}: vertex {vertex} assigned twice")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("line {line}: color must be a positive integer")]
    BadColor { line: usize },
    #[error("assignment covers {found} vertices, graph has {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// Writes one `<1-based vertex> <color>` line per vertex in ascending order.
pub fn write_assignment<W: Write>(coloring: &Coloring, mut out: W) -> io::Result<()> {
    for (v, c) in coloring.colors().iter().enumerate() {
        writeln!(out, "{} {}", v + 1, c)?;
    }
    out.flush()
}

/// Reads an assignment file for a graph with `vertex_count` vertices. Colors
/// may be any positive labels; gaps are allowed and not renumbered.
pub fn parse_assignment<R: BufRead>(
    reader: R,
    vertex_count: usize,
) -> Result<Vec<Color>, AssignmentError> {
    let mut colors = vec![0 as Color; vertex_count];
    let mut assigned = 0;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let [v, c] = tokens[..] else {
            return Err(AssignmentError::Malformed { line: line_no });
        };
        let v: usize = v
            .parse()
            .map_err(|_| AssignmentError::Malformed { line: line_no })?;
        let c: Color = c
            .parse()
            .ok()
            .filter(|&c| c > 0)
            .ok_or(AssignmentError::BadColor { line: line_no })?;
        if v == 0 || v > vertex_count {
            return Err(AssignmentError::VertexOutOfRange {
                line: line_no,
                vertex: v,
                vertex_count,
            });
        }
        if colors[v - 1] != 0 {
            return Err(AssignmentError::DuplicateVertex {
                line: line_no,
                vertex: v,
            });
        }
        colors[v - 1] = c;
        assigned += 1;
    }
    if assigned != vertex_count {
        return Err(AssignmentError::LengthMismatch {
            expected: vertex_count,
            found: assigned,
        });
    }
    Ok(colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn verify_examples() {
        let k3 = complete(3);
        let rainbow = Coloring::from_colors(vec![1, 2, 3]).unwrap();
        assert!(verify(&k3, &rainbow, None).unwrap().is_empty());

        let clash = Coloring::from_colors(vec![1, 1, 2]).unwrap();
        assert_eq!(verify(&k3, &clash, None).unwrap(), vec![(0, 1)]);

        let ones = Coloring::uniform(3);
        assert!(verify(&k3, &ones, Some(&[])).unwrap().is_empty());
        assert_eq!(verify(&k3, &ones, Some(&[2])).unwrap(), vec![k3.edge(2)]);
    }

    #[test]
    fn verify_rejects_size_mismatch() {
        let k3 = complete(3);
        let c = Coloring::uniform(2);
        assert_eq!(
            verify(&k3, &c, None),
            Err(ColoringError::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn contiguity_is_enforced_and_normalization_preserves_order() {
        assert_eq!(
            Coloring::from_colors(vec![1, 3]),
            Err(ColoringError::Gap(2))
        );
        assert_eq!(
            Coloring::from_colors(vec![0, 1]),
            Err(ColoringError::ZeroColor(0))
        );
        let c = Coloring::normalized(vec![7, 3, 3, 9]).unwrap();
        assert_eq!(c.colors(), &[2, 1, 1, 3]);
        assert_eq!(c.used(), 3);
    }

    #[test]
    fn assignment_round_trip_and_errors() {
        let c = Coloring::from_colors(vec![1, 2, 1]).unwrap();
        let mut buf = Vec::new();
        write_assignment(&c, &mut buf).unwrap();
        assert_eq!(std::str::from_utf8(&buf).unwrap(), "1 1\n2 2\n3 1\n");
        assert_eq!(parse_assignment(buf.as_slice(), 3).unwrap(), vec![1, 2, 1]);

        assert!(matches!(
            parse_assignment("1 1\n2 2\n".as_bytes(), 3),
            Err(AssignmentError::LengthMismatch {
                expected: 3,
                found: 2
            })
        ));
        assert!(matches!(
            parse_assignment("1 1\n1 2\n".as_bytes(), 2),
            Err(AssignmentError::DuplicateVertex { line: 2, vertex: 1 })
        ));
        assert!(matches!(
            parse_assignment("4 1\n".as_bytes(), 3),
            Err(AssignmentError::VertexOutOfRange { vertex: 4, .. })
        ));
        assert!(matches!(
            parse_assignment("1 0\n".as_bytes(), 1),
            Err(AssignmentError::BadColor { line: 1 })
        ));
    }
}
