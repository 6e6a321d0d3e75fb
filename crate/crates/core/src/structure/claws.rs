use super::StructureError;
use crate::plane::{FaceId, PlaneGraph};

/// For every vertex, the number of its neighbours on the face boundary.
/// Fails unless the boundary is a cycle.
pub fn face_neighbor_counts(graph: &PlaneGraph, face: FaceId) -> Result<(Vec<bool>, Vec<usize>), StructureError> {
    let walk = graph.face(face);
    if !walk.is_cycle() {
        return Err(StructureError::NotACycleBoundary);
    }
    let mut on_face = vec![false; graph.vertex_count()];
    for &v in walk.walk() {
        on_face[v] = true;
    }
    let counts = graph
        .vertices()
        .map(|v| graph.neighbors(v).iter().filter(|&&u| on_face[u]).count())
        .collect();
    Ok((on_face, counts))
}

/// Vertices off the face with at least three neighbours on its boundary.
pub fn claw_centers(graph: &PlaneGraph, face: FaceId) -> Result<Vec<usize>, StructureError> {
    let (on_face, counts) = face_neighbor_counts(graph, face)?;
    Ok(graph.vertices().filter(|&v| !on_face[v] && counts[v] >= 3).collect())
}

/// Adjacent pairs off the face whose boundary-neighbour counts sum to at
/// least four, as `(u, v)` with `u < v`.
pub fn d_claw_centers(graph: &PlaneGraph, face: FaceId) -> Result<Vec<(usize, usize)>, StructureError> {
    let (on_face, counts) = face_neighbor_counts(graph, face)?;
    Ok(graph
        .edges()
        .filter(|&(u, v)| !on_face[u] && !on_face[v] && counts[u] + counts[v] >= 4)
        .collect())
}
