use serde::Serialize;

use super::StructureError;
use crate::plane::{CycleHandle, FaceId, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Separation {
    Separating,
    Facial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleKind {
    pub kind: Separation,
    /// `int(C)`: vertices strictly on the right of the traversal.
    pub interior: Vec<usize>,
    /// `ext(C)`: every other vertex not on the cycle.
    pub exterior: Vec<usize>,
}

impl CycleKind {
    pub fn is_separating(&self) -> bool {
        self.kind == Separation::Separating
    }
}

/// Faces and vertices on either side of a cycle.
#[derive(Debug, Clone)]
pub struct CycleSides {
    /// Indexed by face: whether the face lies on the right of the cycle.
    pub right_faces: Vec<bool>,
    pub right: Vec<usize>,
    pub left: Vec<usize>,
}

impl CycleSides {
    pub fn face_is_right(&self, face: FaceId) -> bool {
        self.right_faces[face.0]
    }
}

/// Splits the faces of the graph by flooding from the faces on the right of
/// the cycle's darts, never crossing a cycle edge.
pub fn cycle_sides(graph: &PlaneGraph, cycle: &CycleHandle) -> Result<CycleSides, StructureError> {
    let cycle = CycleHandle::new(graph, cycle.vertices().to_vec())?;
    let mut on_cycle = vec![false; graph.vertex_count()];
    for &v in cycle.vertices() {
        on_cycle[v] = true;
    }
    let mut right_faces = vec![false; graph.face_count()];
    let mut stack = Vec::new();
    for (a, b) in cycle.darts() {
        let f = graph.face_of_dart(a, b).expect("cycle dart").0;
        if !right_faces[f] {
            right_faces[f] = true;
            stack.push(f);
        }
    }
    while let Some(f) = stack.pop() {
        for (a, b) in graph.faces()[f].darts() {
            if cycle.has_edge(a, b) {
                continue;
            }
            let g = graph.face_of_dart(b, a).expect("reverse dart").0;
            if !right_faces[g] {
                right_faces[g] = true;
                stack.push(g);
            }
        }
    }
    for (a, b) in cycle.darts() {
        let left = graph.face_of_dart(b, a).expect("cycle dart").0;
        if right_faces[left] {
            return Err(StructureError::Inconsistent("a face lies on both sides of the cycle".into()));
        }
    }
    let mut is_right = vec![false; graph.vertex_count()];
    for (f, walk) in graph.faces().iter().enumerate() {
        if right_faces[f] {
            for &v in walk.walk() {
                if !on_cycle[v] {
                    is_right[v] = true;
                }
            }
        }
    }
    let right = graph.vertices().filter(|&v| is_right[v]).collect();
    let left = graph.vertices().filter(|&v| !is_right[v] && !on_cycle[v]).collect();
    Ok(CycleSides { right_faces, right, left })
}

/// Interior and exterior of an oriented cycle.
pub fn classify_cycle(graph: &PlaneGraph, cycle: &CycleHandle) -> Result<CycleKind, StructureError> {
    let sides = cycle_sides(graph, cycle)?;
    let kind = if !sides.right.is_empty() && !sides.left.is_empty() {
        Separation::Separating
    } else {
        Separation::Facial
    };
    Ok(CycleKind { kind, interior: sides.right, exterior: sides.left })
}

/// The orientation of `cycle` that puts `face` on its exterior side.
pub fn orient_exterior(graph: &PlaneGraph, cycle: &CycleHandle, face: FaceId) -> Result<CycleHandle, StructureError> {
    let sides = cycle_sides(graph, cycle)?;
    Ok(if sides.face_is_right(face) { cycle.reversed() } else { cycle.clone() })
}
