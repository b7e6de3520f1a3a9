//! Edge-list text format.
//!
//! First line is the vertex count; every following line is "u v" with
//! 0 <= u < v < n. Lines starting with '#' are comments; blank lines are
//! ignored. Export writes sorted edges, so export ∘ ingest ∘ export is the
//! identity on files.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use thiserror::Error;

use crate::netgraph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: loop edge {v} {v}")]
    LoopEdge { line: usize, v: u32 },
    #[error("line {line}: vertex {v} out of range (n = {n})")]
    Range { line: usize, v: u32, n: usize },
    #[error("missing vertex-count header")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn write_graph<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    writeln!(w, "{}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn export_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

pub fn export_path(g: &Graph, path: &Path) -> Result<(), EdgeListError> {
    let mut file = fs::File::create(path)?;
    write_graph(g, &mut file)?;
    Ok(())
}

pub fn read_graph<R: BufRead>(r: R) -> Result<Graph, EdgeListError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match n {
            None => {
                n = Some(trimmed.parse().map_err(|_| EdgeListError::Parse {
                    line: lineno,
                    msg: format!("expected vertex count, got {trimmed:?}"),
                })?);
            }
            Some(count) => {
                let mut parts = trimmed.split_whitespace();
                let (u, v) = match (parts.next(), parts.next(), parts.next()) {
                    (Some(u), Some(v), None) => (u, v),
                    _ => {
                        return Err(EdgeListError::Parse {
                            line: lineno,
                            msg: format!("expected \"u v\", got {trimmed:?}"),
                        })
                    }
                };
                let parse = |s: &str| -> Result<u32, EdgeListError> {
                    s.parse().map_err(|_| EdgeListError::Parse {
                        line: lineno,
                        msg: format!("bad vertex index {s:?}"),
                    })
                };
                let (u, v) = (parse(u)?, parse(v)?);
                if u == v {
                    return Err(EdgeListError::LoopEdge { line: lineno, v });
                }
                for w in [u, v] {
                    if w as usize >= count {
                        return Err(EdgeListError::Range { line: lineno, v: w, n: count });
                    }
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(EdgeListError::MissingHeader)?;
    Ok(Graph::from_edges(n, edges)?)
}

pub fn ingest_path(path: &Path) -> Result<Graph, EdgeListError> {
    let file = fs::File::open(path)?;
    read_graph(io::BufReader::new(file))
}

pub fn ingest_string(s: &str) -> Result<Graph, EdgeListError> {
    read_graph(io::Cursor::new(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_parses() {
        let g = ingest_string("3\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.adjacent(0, 1) && g.adjacent(1, 2) && !g.adjacent(0, 2));
    }

    #[test]
    fn duplicates_are_idempotent() {
        let a = ingest_string("3\n0 1\n0 1\n1 2\n").unwrap();
        let b = ingest_string("3\n0 1\n1 2\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn comments_and_blanks_skip() {
        let g = ingest_string("# a path\n3\n\n0 1\n# middle\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match ingest_string("3\n0 1\nnonsense\n") {
            Err(EdgeListError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            ingest_string("3\n1 1\n"),
            Err(EdgeListError::LoopEdge { line: 2, v: 1 })
        ));
        assert!(matches!(
            ingest_string("3\n0 3\n"),
            Err(EdgeListError::Range { line: 2, v: 3, n: 3 })
        ));
        assert!(matches!(ingest_string("# empty\n"), Err(EdgeListError::MissingHeader)));
    }

    #[test]
    fn paley_roundtrip() {
        let f = crate::gf::FieldSpec::new(3, 2).unwrap();
        let (g, _) = crate::netgraph::build_paley(&f).unwrap();
        let text = export_string(&g);
        let back = ingest_string(&text).unwrap();
        assert_eq!(g, back);
        assert_eq!(export_string(&back), text);
    }
}
