use std::collections::HashSet;

use serde::Serialize;

use super::{canonical_code, cycle_sides, orient_exterior, StructureError};
use crate::plane::{CycleHandle, FaceId, PlaneGraph};

/// A 4-cycle `u1 u2 u3 v` where `u1 u2 u3` are consecutive on an 11-face and
/// the apex `v` is off the face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EarRecord {
    pub face: FaceId,
    pub apex: usize,
    pub span: [usize; 3],
}

impl EarRecord {
    pub fn cycle(&self) -> CycleHandle {
        CycleHandle::from_vertices_unchecked(vec![self.span[0], self.span[1], self.span[2], self.apex])
    }
}

/// One collapse of the starting face: a graph and its 11-face.
#[derive(Debug, Clone)]
pub struct CollapseState {
    pub graph: PlaneGraph,
    pub face: FaceId,
    /// Number of ear-reductions from the start state.
    pub depth: usize,
}

fn eleven_cycle(graph: &PlaneGraph, face: FaceId) -> Result<&[usize], StructureError> {
    let walk = graph.face(face);
    if walk.degree() != 11 || !walk.is_cycle() {
        return Err(StructureError::NotAnElevenFace { degree: walk.degree() });
    }
    Ok(walk.walk())
}

pub fn find_ears(graph: &PlaneGraph, face: FaceId) -> Result<Vec<EarRecord>, StructureError> {
    let c = eleven_cycle(graph, face)?;
    let walk = graph.face(face);
    let mut out = Vec::new();
    for i in 0..11 {
        let span = [c[i], c[(i + 1) % 11], c[(i + 2) % 11]];
        let mut apexes: Vec<usize> = graph
            .neighbors(span[0])
            .iter()
            .copied()
            .filter(|&v| !walk.contains(v) && graph.has_edge(v, span[2]))
            .collect();
        apexes.sort_unstable();
        out.extend(apexes.into_iter().map(|apex| EarRecord { face, apex, span }));
    }
    Ok(out)
}

/// Removes `u2` and everything inside the ear 4-cycle (the side away from the
/// face). Returns the reduced graph and its new 11-face `u1 v u3 ...`.
pub fn ear_reduce(graph: &PlaneGraph, ear: &EarRecord) -> Result<(PlaneGraph, FaceId), StructureError> {
    let c = eleven_cycle(graph, ear.face)?;
    let [u1, u2, u3] = ear.span;
    let i = c.iter().position(|&x| x == u1).ok_or(StructureError::NotACycleBoundary)?;
    if c[(i + 1) % 11] != u2 || c[(i + 2) % 11] != u3 {
        return Err(StructureError::Inconsistent("ear span is not consecutive on the face".into()));
    }
    let u4 = c[(i + 3) % 11];
    let ear_cycle = orient_exterior(graph, &CycleHandle::new(graph, ear.cycle().vertices().to_vec())?, ear.face)?;
    let sides = cycle_sides(graph, &ear_cycle)?;
    let mut remove = vec![false; graph.vertex_count()];
    remove[u2] = true;
    for &x in &sides.right {
        remove[x] = true;
    }
    let keep: Vec<bool> = remove.iter().map(|r| !r).collect();
    // an edge u1 u3 drawn inside the ear goes with the removed region
    let inside_chord = graph.face_of_dart(u1, u3).map(|f| sides.face_is_right(f)).unwrap_or(false);
    let (reduced, map) = graph.restrict(&keep, |a, b| !(inside_chord && (a, b) == (u1.min(u3), u1.max(u3))));
    let face = reduced
        .face_of_dart(map[u3].unwrap(), map[u4].unwrap())
        .ok_or_else(|| StructureError::Inconsistent("lost the reduced face".into()))?;
    let walk = reduced.face(face);
    if walk.degree() != 11 || !walk.is_cycle() {
        return Err(StructureError::Inconsistent(format!(
            "ear-reduction produced a face of degree {}",
            walk.degree()
        )));
    }
    Ok((reduced, face))
}

/// Every state reachable by iterated ear-reductions over all ear choices,
/// starting with the given one, deduplicated by [`canonical_code`]. Order is
/// breadth first.
pub fn enumerate_collapses(graph: &PlaneGraph, face: FaceId) -> Result<Vec<CollapseState>, StructureError> {
    eleven_cycle(graph, face)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(canonical_code(graph, face));
    let mut states = vec![CollapseState { graph: graph.clone(), face, depth: 0 }];
    let mut head = 0;
    while head < states.len() {
        let (g, f, depth) = (states[head].graph.clone(), states[head].face, states[head].depth);
        head += 1;
        for ear in find_ears(&g, f)? {
            let (reduced, rf) = ear_reduce(&g, &ear)?;
            debug_assert!(reduced.sigma() < g.sigma());
            if seen.insert(canonical_code(&reduced, rf)) {
                states.push(CollapseState { graph: reduced, face: rf, depth: depth + 1 });
            }
        }
    }
    Ok(states)
}
