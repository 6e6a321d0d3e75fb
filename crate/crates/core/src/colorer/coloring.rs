use std::fmt::Write as _;

use serde::Serialize;

use crate::plane::pg1::{tokens, ParseError};
use crate::plane::PlaneGraph;

/// Partial map from vertices to colours `0`, `1`, `2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    colors: Vec<Option<u8>>,
}

impl Coloring {
    pub fn empty(vertex_count: usize) -> Self {
        Coloring { colors: vec![None; vertex_count] }
    }

    pub fn from_total(colors: &[u8]) -> Self {
        Coloring { colors: colors.iter().map(|&c| Some(c)).collect() }
    }

    /// Assigns `colors[i]` to `vertices[i]`.
    pub fn on_vertices(vertex_count: usize, vertices: &[usize], colors: &[u8]) -> Self {
        let mut c = Coloring::empty(vertex_count);
        for (&v, &col) in vertices.iter().zip(colors) {
            c.set(v, col);
        }
        c
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<u8> {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, color: u8) {
        assert!(color < 3, "colour {color} out of range");
        self.colors[v] = Some(color);
    }

    pub fn clear(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Coloured vertices in index order.
    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.colors.iter().enumerate().filter(|(_, c)| c.is_some()).map(|(v, _)| v)
    }

    pub fn as_slice(&self) -> &[Option<u8>] {
        &self.colors
    }

    /// No edge has both ends coloured alike.
    pub fn is_proper(&self, graph: &PlaneGraph) -> bool {
        self.colors.len() == graph.vertex_count()
            && graph.edges().all(|(u, v)| match (self.colors[u], self.colors[v]) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            })
    }

    /// Whether `self` and `other` agree wherever `other` is defined.
    pub fn extends(&self, other: &Coloring) -> bool {
        other.domain().all(|v| self.colors.get(v).copied().flatten() == other.get(v))
    }
}

/// Total and proper.
pub fn verify_coloring(graph: &PlaneGraph, coloring: &Coloring) -> bool {
    coloring.len() == graph.vertex_count() && coloring.is_total() && coloring.is_proper(graph)
}

/// Parses `col1`: lines `<label> <0|1|2>`; blank lines and `#` comments ignored.
pub fn parse_col1(graph: &PlaneGraph, text: &str) -> Result<Coloring, ParseError> {
    let mut c = Coloring::empty(graph.vertex_count());
    for (i, line) in text.lines().enumerate() {
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let line_no = i + 1;
        if toks.len() != 2 {
            return Err(ParseError::new(line_no, toks[0].0, "expected `<label> <colour>`"));
        }
        let (lcol, label) = toks[0];
        let (ccol, color) = toks[1];
        let v = graph
            .index_of(label)
            .ok_or_else(|| ParseError::new(line_no, lcol, format!("unknown vertex `{label}`")))?;
        let color = match color {
            "0" => 0,
            "1" => 1,
            "2" => 2,
            _ => return Err(ParseError::new(line_no, ccol, format!("colour must be 0, 1 or 2, found `{color}`"))),
        };
        if c.get(v).is_some() {
            return Err(ParseError::new(line_no, lcol, format!("vertex `{label}` coloured twice")));
        }
        c.set(v, color);
    }
    Ok(c)
}

/// Writes the coloured vertices in index order.
pub fn write_col1(graph: &PlaneGraph, coloring: &Coloring) -> String {
    let mut out = String::new();
    for v in coloring.domain() {
        writeln!(out, "{} {}", graph.label(v), coloring.get(v).unwrap()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::cycle_graph;

    #[test]
    fn verifies_triangle() {
        let t = cycle_graph(3);
        assert!(verify_coloring(&t, &Coloring::from_total(&[0, 1, 2])));
        assert!(!verify_coloring(&t, &Coloring::from_total(&[0, 0, 1])));
        let partial = Coloring::on_vertices(3, &[0, 1], &[0, 1]);
        assert!(partial.is_proper(&t));
        assert!(!verify_coloring(&t, &partial));
    }

    #[test]
    fn col1_round_trip_and_errors() {
        let t = cycle_graph(3);
        let c = parse_col1(&t, "# boundary\n0 2\n\n2 1\n").unwrap();
        assert_eq!(c.as_slice(), &[Some(2), None, Some(1)]);
        assert_eq!(write_col1(&t, &c), "0 2\n2 1\n");
        let e = parse_col1(&t, "0 3\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(parse_col1(&t, "9 0\n").is_err());
        assert!(parse_col1(&t, "0 0\n0 1\n").is_err());
    }
}
