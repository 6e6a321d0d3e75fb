use serde::Serialize;
use thiserror::Error;

use crate::colorer::Coloring;
use crate::plane::PlaneGraph;

/// New degree-2 vertices replacing the edge `ends` of the original graph,
/// listed from `ends.0` to `ends.1`. All indices are in the part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaddingPath {
    pub ends: (usize, usize),
    pub path: Vec<usize>,
}

/// How the original vertices appear in one result graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartMap {
    /// Original vertex -> vertex of the part, if present. Identified vertices
    /// share an image.
    pub image: Vec<Option<usize>>,
    pub padding: Vec<PaddingPath>,
}

impl PartMap {
    pub fn identity(n: usize) -> Self {
        PartMap { image: (0..n).map(Some).collect(), padding: Vec::new() }
    }

    /// Original vertices mapped onto part vertex `x`.
    pub fn preimage(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.image.iter().enumerate().filter(move |(_, &i)| i == Some(x)).map(|(v, _)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("expected {expected} part colourings, got {got}")]
    PartCount { expected: usize, got: usize },
    #[error("part colouring {part} is not total")]
    PartialPart { part: usize },
    #[error("colourings of the parts disagree on shared vertices beyond a permutation")]
    Misaligned,
    #[error("vertices identified by the surgery carry different colours")]
    IdentifiedConflict,
    #[error("vertex {0} has no free colour")]
    Stuck(usize),
    #[error("transferred colouring is not proper")]
    Improper,
}

/// Moves colourings between the original graph and the surgery result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringTransfer {
    pub original_len: usize,
    pub parts: Vec<PartMap>,
    /// Original vertices in no part; pull-back colours them greedily.
    pub dropped: Vec<usize>,
}

const PERMUTATIONS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn greedy(graph: &PlaneGraph, coloring: &mut Coloring, v: usize) -> Result<(), usize> {
    let used = graph.neighbors(v).iter().filter_map(|&u| coloring.get(u)).fold(0u8, |m, c| m | 1 << c);
    match (0..3).find(|c| used & (1 << c) == 0) {
        Some(c) => {
            coloring.set(v, c);
            Ok(())
        }
        None => Err(v),
    }
}

impl ColoringTransfer {
    /// Combines total colourings of the parts into a colouring of the
    /// original. Later parts are recoloured by the first colour permutation
    /// that agrees with what earlier parts fixed.
    pub fn pull_back(&self, original: &PlaneGraph, parts: &[Coloring]) -> Result<Coloring, TransferError> {
        if parts.len() != self.parts.len() {
            return Err(TransferError::PartCount { expected: self.parts.len(), got: parts.len() });
        }
        let mut out = Coloring::empty(self.original_len);
        for (i, (map, col)) in self.parts.iter().zip(parts).enumerate() {
            if !col.is_total() {
                return Err(TransferError::PartialPart { part: i });
            }
            let pairs: Vec<(u8, u8)> = map
                .image
                .iter()
                .enumerate()
                .filter_map(|(v, x)| Some((col.get((*x)?)?, out.get(v)?)))
                .collect();
            let perm = PERMUTATIONS
                .iter()
                .find(|p| pairs.iter().all(|&(from, to)| p[from as usize] == to))
                .ok_or(TransferError::Misaligned)?;
            for (v, x) in map.image.iter().enumerate() {
                if let Some(x) = *x {
                    out.set(v, perm[col.get(x).unwrap() as usize]);
                }
            }
        }
        for &v in &self.dropped {
            greedy(original, &mut out, v).map_err(TransferError::Stuck)?;
        }
        if !out.is_proper(original) || !out.is_total() {
            return Err(TransferError::Improper);
        }
        Ok(out)
    }

    /// Image of a partial colouring of the original in part `part`. Padding
    /// paths whose two ends are coloured are filled greedily from `ends.0`.
    pub fn push_forward(&self, part: usize, graph: &PlaneGraph, phi: &Coloring) -> Result<Coloring, TransferError> {
        let map = &self.parts[part];
        let mut out = Coloring::empty(graph.vertex_count());
        for v in phi.domain() {
            if let Some(x) = map.image[v] {
                let c = phi.get(v).unwrap();
                match out.get(x) {
                    Some(d) if d != c => return Err(TransferError::IdentifiedConflict),
                    _ => out.set(x, c),
                }
            }
        }
        for pad in &map.padding {
            if out.get(pad.ends.0).is_some() && out.get(pad.ends.1).is_some() {
                for &s in &pad.path {
                    greedy(graph, &mut out, s).map_err(TransferError::Stuck)?;
                }
            }
        }
        if !out.is_proper(graph) {
            return Err(TransferError::Improper);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::cycle_graph;

    #[test]
    fn pull_back_aligns_second_part() {
        // both parts are the whole triangle, coloured differently
        let t = cycle_graph(3);
        let transfer = ColoringTransfer {
            original_len: 3,
            parts: vec![PartMap::identity(3), PartMap::identity(3)],
            dropped: Vec::new(),
        };
        let a = Coloring::from_total(&[0, 1, 2]);
        let b = Coloring::from_total(&[2, 0, 1]);
        assert_eq!(transfer.pull_back(&t, &[a.clone(), b]).unwrap(), a);
    }

    #[test]
    fn pull_back_rejects_misaligned_parts() {
        let g = cycle_graph(4);
        let transfer = ColoringTransfer {
            original_len: 4,
            parts: vec![PartMap::identity(4), PartMap::identity(4)],
            dropped: Vec::new(),
        };
        let a = Coloring::from_total(&[0, 1, 0, 1]);
        let b = Coloring::from_total(&[0, 1, 2, 1]);
        assert_eq!(transfer.pull_back(&g, &[a, b]), Err(TransferError::Misaligned));
    }

    #[test]
    fn dropped_vertices_are_greedy() {
        let g = cycle_graph(4);
        let transfer = ColoringTransfer {
            original_len: 4,
            parts: vec![PartMap { image: vec![Some(0), Some(1), Some(2), None], padding: Vec::new() }],
            dropped: vec![3],
        };
        let c = transfer.pull_back(&g, &[Coloring::from_total(&[0, 1, 2])]).unwrap();
        assert_eq!(c.get(3), Some(1));
    }
}
