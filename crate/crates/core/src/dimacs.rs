//! DIMACS `.col` reader and writer.
//!
//! ```text
//! c optional comments
//! p edge <n> <m>
//! e <u> <v>        (1-based endpoints)
//! ```

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("no `p edge <n> <m>` line found")]
    MissingProblemLine,
    #[error("line {line}: second `p` line (first was on line {first})")]
    DuplicateProblemLine { line: usize, first: usize },
    #[error("line {line}: edge appears before the `p` line")]
    EdgeBeforeProblemLine { line: usize },
    #[error("line {line}: endpoint {vertex} out of range [1, {vertex_count}]")]
    EndpointOutOfRange {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: expected an integer, found `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: malformed `{tag}` record")]
    MalformedLine { line: usize, tag: String },
    #[error("line {line}: unknown record type `{tag}`")]
    UnknownRecord { line: usize, tag: String },
    #[error("line {line}: graph has no vertices")]
    NoVertices { line: usize },
}

/// A parsed `.col` file: the graph plus bookkeeping from the header.
#[derive(Debug, Clone)]
pub struct DimacsGraph {
    pub graph: Graph,
    /// Edge count stated on the `p` line.
    pub declared_edges: usize,
    /// `e` lines dropped as duplicates (including reversed repeats).
    pub duplicates: usize,
}

fn parse_int(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::InvalidToken {
        line,
        token: token.to_string(),
    })
}

pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<DimacsGraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None; // (n, m, line)
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let mut tokens = line.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "c" => {}
            "p" => {
                if let Some((_, _, first)) = header {
                    return Err(ParseError::DuplicateProblemLine {
                        line: line_no,
                        first,
                    });
                }
                let rest: Vec<&str> = tokens.collect();
                if rest.len() != 3 || !matches!(rest[0], "edge" | "col") {
                    return Err(ParseError::MalformedLine {
                        line: line_no,
                        tag: tag.to_string(),
                    });
                }
                let n = parse_int(rest[1], line_no)?;
                let m = parse_int(rest[2], line_no)?;
                if n == 0 {
                    return Err(ParseError::NoVertices { line: line_no });
                }
                header = Some((n, m, line_no));
                edges.reserve(m);
            }
            "e" => {
                let Some((n, _, _)) = header else {
                    return Err(ParseError::EdgeBeforeProblemLine { line: line_no });
                };
                let rest: Vec<&str> = tokens.collect();
                if rest.len() != 2 {
                    return Err(ParseError::MalformedLine {
                        line: line_no,
                        tag: tag.to_string(),
                    });
                }
                let u = parse_int(rest[0], line_no)?;
                let v = parse_int(rest[1], line_no)?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(ParseError::EndpointOutOfRange {
                            line: line_no,
                            vertex: w,
                            vertex_count: n,
                        });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop {
                        line: line_no,
                        vertex: u,
                    });
                }
                edges.push((u - 1, v - 1));
            }
            other => {
                return Err(ParseError::UnknownRecord {
                    line: line_no,
                    tag: other.to_string(),
                })
            }
        }
    }

    let (n, m, _) = header.ok_or(ParseError::MissingProblemLine)?;
    let graph = Graph::from_edges(n, edges).expect("endpoints validated per line");
    if graph.edge_count() != m {
        log::warn!(
            "p line declares {m} edges but {} distinct edges were read ({} duplicates merged)",
            graph.edge_count(),
            graph.duplicates_merged()
        );
    }
    Ok(DimacsGraph {
        duplicates: graph.duplicates_merged(),
        declared_edges: m,
        graph,
    })
}

pub fn parse_dimacs_str(text: &str) -> Result<DimacsGraph, ParseError> {
    parse_dimacs(text.as_bytes())
}

pub fn read_dimacs_file<P: AsRef<Path>>(path: P) -> Result<DimacsGraph, ParseError> {
    let file = File::open(path)?;
    parse_dimacs(BufReader::new(file))
}

/// Writes `p edge n m` then one `e u v` line per edge, 1-based with `u < v`.
pub fn write_dimacs<W: Write>(graph: &Graph, mut out: W) -> io::Result<()> {
    writeln!(
        out,
        "p edge {} {}",
        graph.vertex_count(),
        graph.edge_count()
    )?;
    for &(u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_triangle() {
        let d = parse_dimacs_str("p edge 3 3\ne 1 2\ne 2 3\ne 1 3").unwrap();
        assert_eq!(d.graph.vertex_count(), 3);
        assert_eq!(d.graph.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(d.duplicates, 0);
    }

    #[test]
    fn comments_blank_lines_and_duplicates() {
        let text = "c hello\n\nc world\np edge 3 4\ne 1 2\ne 2 1\ne 1 2\ne 3 2\n";
        let d = parse_dimacs_str(text).unwrap();
        assert_eq!(d.graph.edge_count(), 2);
        assert_eq!(d.declared_edges, 4);
        assert_eq!(d.duplicates, 2);
    }

    #[test]
    fn endpoint_out_of_range() {
        let err = parse_dimacs_str("p edge 2 1\ne 1 3").unwrap_err();
        assert!(matches!(
            err,
            ParseError::EndpointOutOfRange {
                line: 2,
                vertex: 3,
                vertex_count: 2
            }
        ));
        let err = parse_dimacs_str("p edge 2 1\ne 0 1").unwrap_err();
        assert!(matches!(
            err,
            ParseError::EndpointOutOfRange { vertex: 0, .. }
        ));
    }

    #[test]
    fn distinct_errors_with_line_numbers() {
        assert!(matches!(
            parse_dimacs_str("c only\n").unwrap_err(),
            ParseError::MissingProblemLine
        ));
        assert!(matches!(
            parse_dimacs_str("p edge 2 1\np edge 2 1\n").unwrap_err(),
            ParseError::DuplicateProblemLine { line: 2, first: 1 }
        ));
        assert!(matches!(
            parse_dimacs_str("p edge 3 1\ne 2 2\n").unwrap_err(),
            ParseError::SelfLoop { line: 2, vertex: 2 }
        ));
        assert!(matches!(
            parse_dimacs_str("p edge 3 x\n").unwrap_err(),
            ParseError::InvalidToken { line: 1, .. }
        ));
        assert!(matches!(
            parse_dimacs_str("p edge 3 1\ne 1 b\n").unwrap_err(),
            ParseError::InvalidToken { line: 2, .. }
        ));
        assert!(matches!(
            parse_dimacs_str("e 1 2\np edge 3 1\n").unwrap_err(),
            ParseError::EdgeBeforeProblemLine { line: 1 }
        ));
        assert!(matches!(
            parse_dimacs_str("p edge 3 1\ne 1\n").unwrap_err(),
            ParseError::MalformedLine { line: 2, .. }
        ));
        assert!(matches!(
            parse_dimacs_str("p edge 3 1\nq 1 2\n").unwrap_err(),
            ParseError::UnknownRecord { line: 2, .. }
        ));
    }

    #[test]
    fn writer_output_format() {
        let g = Graph::from_edges(3, [(2, 0), (1, 2)]).unwrap();
        let mut buf = Vec::new();
        write_dimacs(&g, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "p edge 3 2\ne 1 3\ne 2 3\n"
        );
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..20).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..60).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn write_then_parse_round_trips(g in arb_graph()) {
            let mut buf = Vec::new();
            write_dimacs(&g, &mut buf).unwrap();
            let back = parse_dimacs(buf.as_slice()).unwrap().graph;
            prop_assert_eq!(back.edges(), g.edges());
            prop_assert_eq!(back.vertex_count(), g.vertex_count());
        }

        #[test]
        fn degree_sum_is_twice_edge_count(g in arb_graph()) {
            let sum: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(sum, 2 * g.edge_count());
        }
    }
}
