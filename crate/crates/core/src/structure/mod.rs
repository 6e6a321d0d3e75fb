//! Configurations on and around a designated face.

mod analysis;
mod canon;
mod claws;
mod ears;
mod sides;
mod special;

use thiserror::Error;

use crate::class::cycles_of_length;
use crate::plane::{CycleHandle, FaceId, GraphError, PlaneGraph};

pub use analysis::{analyze, EarReport, FaceAnalysis, SeparatingCycleReport, SpecialFaceReport, SEPARATING_LENGTHS};
pub use canon::canonical_code;
pub use claws::{claw_centers, d_claw_centers, face_neighbor_counts};
pub use ears::{ear_reduce, enumerate_collapses, find_ears, CollapseState, EarRecord};
pub use sides::{classify_cycle, cycle_sides, orient_exterior, CycleKind, CycleSides, Separation};
pub use special::{is_special_cycle, is_special_face, SpecialCycleVerdict, SpecialFaceCertificate, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    NotACycle(#[from] GraphError),
    #[error("face has degree {degree}, expected an 11-face bounded by a cycle")]
    NotAnElevenFace { degree: usize },
    #[error("face boundary is not a cycle")]
    NotACycleBoundary,
    #[error("cycle has length {0}, expected 11")]
    NotElevenCycle(usize),
    #[error("inconsistent embedding: {0}")]
    Inconsistent(String),
}

/// Edges joining non-consecutive vertices of the cycle, ordered by the
/// positions of their endpoints along it.
pub fn chords_of(graph: &PlaneGraph, cycle: &CycleHandle) -> Result<Vec<(usize, usize)>, StructureError> {
    let cycle = CycleHandle::new(graph, cycle.vertices().to_vec())?;
    let c = cycle.vertices();
    let k = c.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            if graph.has_edge(c[i], c[j]) {
                out.push((c[i], c[j]));
            }
        }
    }
    Ok(out)
}

/// Whether the graph is 2-connected: connected, at least three vertices and
/// no cut vertex.
pub fn is_two_connected(graph: &PlaneGraph) -> bool {
    let n = graph.vertex_count();
    if n < 3 || !graph.is_connected() {
        return false;
    }
    // iterative low-link from vertex 0
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut root_children = 0;
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(&mut (u, parent, ref mut i)) = stack.last_mut() {
        if *i < graph.degree(u) {
            let v = graph.neighbors(u)[*i];
            *i += 1;
            if disc[v] == usize::MAX {
                disc[v] = time;
                low[v] = time;
                time += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((v, u, 0));
            } else if v != parent {
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[u]);
                if parent != 0 && low[u] >= disc[parent] {
                    return false;
                }
            }
        }
    }
    root_children <= 1
}

/// Vertices off the face adjacent to two boundary vertices that are not
/// consecutive on it, as `(x, a, b)` with `a < b`.
pub fn nonconsecutive_attachments(graph: &PlaneGraph, face: FaceId) -> Vec<(usize, usize, usize)> {
    let walk = graph.face(face);
    let Some(cycle) = walk.as_cycle() else { return Vec::new() };
    let mut out = Vec::new();
    for x in graph.vertices().filter(|&x| !cycle.contains(x)) {
        let mut on: Vec<usize> = graph.neighbors(x).iter().copied().filter(|&y| cycle.contains(y)).collect();
        on.sort_unstable();
        for i in 0..on.len() {
            for j in i + 1..on.len() {
                if !cycle.has_edge(on[i], on[j]) {
                    out.push((x, on[i], on[j]));
                }
            }
        }
    }
    out
}

/// Separating cycles of length `k`, oriented so that `outer` is exterior,
/// in canonical enumeration order.
pub fn separating_cycles(graph: &PlaneGraph, outer: FaceId, k: usize) -> Vec<(CycleHandle, CycleKind)> {
    let mut out = Vec::new();
    for c in cycles_of_length(graph, k) {
        let Ok(oriented) = orient_exterior(graph, &c, outer) else { continue };
        let Ok(kind) = classify_cycle(graph, &oriented) else { continue };
        if kind.is_separating() {
            out.push((oriented, kind));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::cycle_graph;

    fn with_chords(n: usize, chords: &[(usize, usize)]) -> PlaneGraph {
        crate::plane::polygon_with_chords(n, chords).unwrap()
    }

    #[test]
    fn chords_listed_in_order() {
        let c9 = cycle_graph(9);
        let cyc = c9.face(FaceId(0)).as_cycle().unwrap();
        assert!(chords_of(&c9, &cyc).unwrap().is_empty());

        let g = with_chords(11, &[(0, 2)]);
        let cyc = CycleHandle::new(&g, (0..11).collect()).unwrap();
        assert_eq!(chords_of(&g, &cyc).unwrap(), vec![(0, 2)]);

        let g = with_chords(11, &[(0, 2), (3, 8)]);
        let cyc = CycleHandle::new(&g, (0..11).collect()).unwrap();
        assert_eq!(chords_of(&g, &cyc).unwrap(), vec![(0, 2), (3, 8)]);
    }

    #[test]
    fn two_connectivity() {
        assert!(is_two_connected(&cycle_graph(5)));
        let path = PlaneGraph::from_labeled(&[("a", vec!["b"]), ("b", vec!["a", "c"]), ("c", vec!["b"])]).unwrap();
        assert!(!is_two_connected(&path));
        // two triangles sharing vertex 0
        let bowtie = PlaneGraph::new(
            (0..5).map(|i| i.to_string()).collect(),
            vec![vec![1, 2, 3, 4], vec![2, 0], vec![0, 1], vec![4, 0], vec![0, 3]],
        )
        .unwrap();
        assert!(!is_two_connected(&bowtie));
        assert!(is_two_connected(&with_chords(9, &[(0, 4)])));
    }
}
