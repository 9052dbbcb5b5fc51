//! Plain edge-list format.
//!
//! The first significant line is `n m`; it is followed by `m` lines `u v`
//! with `0 <= u, v < n`. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let err = |message: String| Error::Parse {
        line: lineno,
        message,
    };
    let a = it.next().ok_or_else(|| err("expected two integers".into()))?;
    let b = it.next().ok_or_else(|| err("expected two integers".into()))?;
    if it.next().is_some() {
        return Err(err("trailing tokens".into()));
    }
    let a = a
        .parse::<usize>()
        .map_err(|e| err(format!("bad integer {a:?}: {e}")))?;
    let b = b
        .parse::<usize>()
        .map_err(|e| err(format!("bad integer {b:?}: {e}")))?;
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::new();
    let mut seen = 0usize;
    let mut last_line = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (a, b) = parse_pair(line, lineno)?;
        match header {
            None => {
                header = Some((a, b));
                g = Graph::with_vertices(a);
            }
            Some((n, m)) => {
                let err = |message: String| Error::Parse {
                    line: lineno,
                    message,
                };
                if seen == m {
                    return Err(err(format!("more than the declared {m} edges")));
                }
                if a >= n || b >= n {
                    return Err(err(format!("vertex out of range 0..{n}")));
                }
                if a == b {
                    return Err(err(format!("self-loop at {a}")));
                }
                if !g.add_edge(a, b).expect("endpoints checked") {
                    return Err(err(format!("duplicate edge {a} {b}")));
                }
                seen += 1;
            }
        }
    }
    match header {
        None => Err(Error::Parse {
            line: last_line.max(1),
            message: "missing `n m` header".into(),
        }),
        Some((_, m)) if seen != m => Err(Error::Parse {
            line: last_line.max(1),
            message: format!("declared {m} edges, found {seen}"),
        }),
        Some(_) => Ok(g),
    }
}

/// Serializes `g`, relabelling its vertices to `0..n` in ascending id order.
pub fn write_edge_list(g: &Graph) -> String {
    let (h, _) = g.compacted();
    let mut out = String::new();
    writeln!(out, "{} {}", h.order(), h.size()).unwrap();
    for (u, v) in h.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "# diamond\n4 5\n0 1\n0 2\n\n1 2\n1 3\n2 3\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!((g.order(), g.size()), (4, 5));
        let again = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("3 2\n0 1\n0 1\n", 3),
            ("3 1\n0 5\n", 2),
            ("3 1\n1 1\n", 2),
            ("3 1\nx 1\n", 2),
            ("3 2\n0 1\n", 2),
            ("2 1\n0 1\n1 0\n", 3),
        ];
        for (text, line) in cases {
            match parse_edge_list(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn compaction_after_deletion() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap().without(&[0]);
        assert_eq!(write_edge_list(&g), "3 2\n0 1\n1 2\n");
    }
}
