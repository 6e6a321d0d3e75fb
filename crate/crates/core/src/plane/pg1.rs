//! The `pg1` text format.
//!
//! ```text
//! pg1 3
//! a: b c
//! b: c a
//! c: a b
//! ```
//!
//! The header gives the vertex count, then one line per vertex lists its
//! neighbours in clockwise order. Vertex indices follow line order. Blank
//! lines and `#` comments are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{valid_label, GraphError, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

/// Splits a line into `(column, token)` pairs, dropping any `#` comment.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            if c == '#' {
                return out;
            }
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse(text: &str) -> Result<PlaneGraph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, tokens(l))).filter(|(_, t)| !t.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "missing `pg1 <n>` header"))?;
    if header[0].1 != "pg1" {
        return Err(ParseError::new(hline, header[0].0, format!("expected `pg1`, found `{}`", header[0].1)));
    }
    let (ncol, ntok) = *header
        .get(1)
        .ok_or_else(|| ParseError::new(hline, header[0].0 + 3, "missing vertex count"))?;
    let n: usize = ntok
        .parse()
        .map_err(|_| ParseError::new(hline, ncol, format!("invalid vertex count `{ntok}`")))?;
    if let Some(&(col, extra)) = header.get(2) {
        return Err(ParseError::new(hline, col, format!("unexpected `{extra}` after vertex count")));
    }

    struct Row<'a> {
        line: usize,
        neighbors: Vec<(usize, &'a str)>,
    }
    let mut labels: Vec<String> = Vec::with_capacity(n);
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(n);
    let mut rows: Vec<Row> = Vec::with_capacity(n);
    for (line, toks) in lines {
        let (col, head) = toks[0];
        let (label, rest): (&str, Vec<(usize, &str)>) = if let Some(l) = head.strip_suffix(':') {
            (l, toks[1..].to_vec())
        } else if let Some((l, tail)) = head.split_once(':') {
            let mut rest = vec![(col + l.len() + 1, tail)];
            rest.extend_from_slice(&toks[1..]);
            (l, rest)
        } else if toks.get(1).map(|t| t.1.starts_with(':')) == Some(true) {
            let (c2, t2) = toks[1];
            let mut rest = Vec::new();
            if t2.len() > 1 {
                rest.push((c2 + 1, &t2[1..]));
            }
            rest.extend_from_slice(&toks[2..]);
            (head, rest)
        } else {
            return Err(ParseError::new(line, col, "expected `<label>: <neighbours>`"));
        };
        if !valid_label(label) {
            return Err(ParseError::new(line, col, format!("invalid label `{label}`")));
        }
        if rows.len() == n {
            return Err(ParseError::new(line, col, format!("more than {n} vertex lines")));
        }
        if index.insert(label, labels.len()).is_some() {
            return Err(ParseError::new(line, col, format!("vertex `{label}` defined twice")));
        }
        labels.push(label.to_string());
        rows.push(Row { line, neighbors: rest });
    }
    if rows.len() != n {
        let line = text.lines().count().max(1);
        return Err(ParseError::new(line, 1, format!("expected {n} vertex lines, found {}", rows.len())));
    }
    let mut rotation = Vec::with_capacity(n);
    for row in &rows {
        let mut r = Vec::with_capacity(row.neighbors.len());
        for &(col, nb) in &row.neighbors {
            let v = *index
                .get(nb)
                .ok_or_else(|| ParseError::new(row.line, col, format!("undeclared label `{nb}`")))?;
            r.push(v);
        }
        rotation.push(r);
    }
    PlaneGraph::new(labels, rotation).map_err(|e| {
        let line = match &e {
            GraphError::SymmetryViolation { from: l, .. }
            | GraphError::SelfLoop(l)
            | GraphError::RepeatedNeighbor { vertex: l, .. }
            | GraphError::NotPlanar { vertex: l, .. } => index.get(l.as_str()).map(|&i| rows[i].line),
            _ => None,
        };
        ParseError::new(line.unwrap_or(1), 1, e.to_string())
    })
}

/// Labels from a `# face a b c` comment line, if the text has one.
pub fn face_hint(text: &str) -> Option<Vec<String>> {
    text.lines().find_map(|l| {
        let rest = l.trim_start().strip_prefix('#')?.trim_start().strip_prefix("face")?;
        rest.starts_with(char::is_whitespace).then(|| rest.split_whitespace().map(str::to_string).collect())
    })
}

/// Canonical serialisation: vertices in index order, rotations as stored.
pub fn write(graph: &PlaneGraph) -> String {
    let mut out = String::new();
    writeln!(out, "pg1 {}", graph.vertex_count()).unwrap();
    for v in graph.vertices() {
        out.push_str(graph.label(v));
        out.push(':');
        for &u in graph.neighbors(v) {
            out.push(' ');
            out.push_str(graph.label(u));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "pg1 3\n# a comment\n\na: b c\nb: c a   # trailing\nc: a b\n";

    #[test]
    fn face_header() {
        assert_eq!(face_hint("# face a b c\npg1 3\n"), Some(vec!["a".into(), "b".into(), "c".into()]));
        assert_eq!(face_hint(TRIANGLE), None);
        assert_eq!(face_hint("# faces a\n"), None);
    }

    #[test]
    fn parses_triangle() {
        let g = parse(TRIANGLE).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(write(&g), "pg1 3\na: b c\nb: c a\nc: a b\n");
    }

    #[test]
    fn reports_positions() {
        let err = parse("pg1 2\na: b\nb: x\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 4));
        let err = parse("pg1 2\na: b\nb:\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("does not list"));
        let err = parse("pgx 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = parse("pg1 3\na: b\nb: a\n").unwrap_err();
        assert!(err.message.contains("expected 3"));
    }

    #[test]
    fn accepts_spaced_colon() {
        let g = parse("pg1 2\na : b\nb :a\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn isolated_vertex_round_trip() {
        let text = "pg1 1\nv:\n";
        assert_eq!(write(&parse(text).unwrap()), text);
    }
}
