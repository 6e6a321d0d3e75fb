use serde::Serialize;

use super::{claw_centers, cycle_sides, d_claw_centers, enumerate_collapses, CollapseState, StructureError};
use crate::plane::{CycleHandle, FaceId, PlaneGraph};

/// Why a face is not special. Vertices are given by label because they may
/// live in a collapse graph rather than the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotElevenFace { degree: usize },
    BoundaryNotCycle,
    NoAdjacentTriangle,
    ClawCenter { collapse: usize, vertex: String },
    DClawCenter { collapse: usize, pair: (String, String) },
}

#[derive(Debug, Clone)]
pub struct SpecialFaceCertificate {
    pub face: FaceId,
    pub boundary: Vec<usize>,
    /// A 3-face sharing exactly one edge with the face.
    pub adjacent_triangle: Option<CycleHandle>,
    /// Every collapse checked against the claw conditions, start state first.
    pub collapses: Vec<CollapseState>,
    pub violation: Option<Violation>,
}

impl SpecialFaceCertificate {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

fn adjacent_triangle(graph: &PlaneGraph, face: FaceId) -> Option<CycleHandle> {
    let walk = graph.face(face);
    let on_face_edge = |a: usize, b: usize| walk.darts().any(|(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    for (a, b) in walk.darts() {
        let other = graph.face_of_dart(b, a)?;
        let t = graph.face(other);
        if other == face || t.degree() != 3 || !t.is_cycle() {
            continue;
        }
        let shared = t.darts().filter(|&(x, y)| on_face_edge(x, y)).count();
        if shared == 1 {
            return t.as_cycle();
        }
    }
    None
}

/// Checks conditions (1)-(4): cyclic 11-face, an adjacent 3-face sharing
/// exactly one edge, and no claw-center or d-claw-center in any collapse.
pub fn is_special_face(graph: &PlaneGraph, face: FaceId) -> SpecialFaceCertificate {
    let walk = graph.face(face);
    let mut cert = SpecialFaceCertificate {
        face,
        boundary: walk.walk().to_vec(),
        adjacent_triangle: None,
        collapses: Vec::new(),
        violation: None,
    };
    if walk.degree() != 11 {
        cert.violation = Some(Violation::NotElevenFace { degree: walk.degree() });
        return cert;
    }
    if !walk.is_cycle() {
        cert.violation = Some(Violation::BoundaryNotCycle);
        return cert;
    }
    cert.adjacent_triangle = adjacent_triangle(graph, face);
    if cert.adjacent_triangle.is_none() {
        cert.violation = Some(Violation::NoAdjacentTriangle);
        return cert;
    }
    cert.collapses = enumerate_collapses(graph, face).expect("cyclic 11-face");
    for (idx, state) in cert.collapses.iter().enumerate() {
        let g = &state.graph;
        if let Some(&z) = claw_centers(g, state.face).expect("cyclic").first() {
            cert.violation = Some(Violation::ClawCenter { collapse: idx, vertex: g.label(z).to_string() });
            break;
        }
        if let Some(&(a, b)) = d_claw_centers(g, state.face).expect("cyclic").first() {
            cert.violation = Some(Violation::DClawCenter {
                collapse: idx,
                pair: (g.label(a).to_string(), g.label(b).to_string()),
            });
            break;
        }
    }
    cert
}

#[derive(Debug, Clone)]
pub struct SpecialCycleVerdict {
    pub special: bool,
    pub separating: bool,
    /// `G \ ext(C)` and the face bounded by the cycle there.
    pub reduced: PlaneGraph,
    pub certificate: SpecialFaceCertificate,
}

/// Deletes the exterior of an oriented 11-cycle and checks that the face on
/// the exterior side is special.
pub fn is_special_cycle(graph: &PlaneGraph, cycle: &CycleHandle) -> Result<SpecialCycleVerdict, StructureError> {
    if cycle.len() != 11 {
        return Err(StructureError::NotElevenCycle(cycle.len()));
    }
    let sides = cycle_sides(graph, cycle)?;
    let mut remove = vec![false; graph.vertex_count()];
    for &v in &sides.left {
        remove[v] = true;
    }
    let (reduced, map) = graph.remove_vertices(&remove);
    let c = cycle.vertices();
    let face = reduced
        .face_of_dart(map[c[1]].unwrap(), map[c[0]].unwrap())
        .expect("cycle edges survive exterior deletion");
    let certificate = is_special_face(&reduced, face);
    Ok(SpecialCycleVerdict {
        special: certificate.is_valid(),
        separating: !sides.left.is_empty() && !sides.right.is_empty(),
        reduced,
        certificate,
    })
}
