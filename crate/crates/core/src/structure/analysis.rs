use serde::Serialize;

use super::{
    chords_of, claw_centers, d_claw_centers, find_ears, is_special_cycle, is_special_face, nonconsecutive_attachments,
    separating_cycles, Violation,
};
use crate::plane::{FaceId, PlaneGraph};

/// Lengths of separating cycles that the reductions care about.
pub const SEPARATING_LENGTHS: [usize; 5] = [3, 4, 6, 9, 11];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingCycleReport {
    pub cycle: Vec<String>,
    pub interior: Vec<String>,
    pub exterior: Vec<String>,
    /// Only for 11-cycles.
    pub special: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EarReport {
    pub apex: String,
    pub span: [String; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialFaceReport {
    pub special: bool,
    pub adjacent_triangle: Option<Vec<String>>,
    pub collapses: usize,
    pub violation: Option<Violation>,
}

/// Everything the structure detectors report about one face, by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceAnalysis {
    pub face: Vec<String>,
    pub degree: usize,
    pub is_cycle: bool,
    pub chords: Vec<(String, String)>,
    pub nonconsecutive_attachments: Vec<(String, String, String)>,
    pub separating_cycles: Vec<SeparatingCycleReport>,
    pub ears: Vec<EarReport>,
    pub claw_centers: Vec<String>,
    pub d_claw_centers: Vec<(String, String)>,
    pub special_face: Option<SpecialFaceReport>,
}

pub fn analyze(graph: &PlaneGraph, face: FaceId) -> FaceAnalysis {
    let l = |v: usize| graph.label(v).to_string();
    let ls = |vs: &[usize]| vs.iter().map(|&v| l(v)).collect::<Vec<_>>();
    let walk = graph.face(face);
    let cycle = walk.as_cycle();
    let chords = cycle
        .as_ref()
        .and_then(|c| chords_of(graph, c).ok())
        .unwrap_or_default()
        .into_iter()
        .map(|(a, b)| (l(a), l(b)))
        .collect();
    let separating = SEPARATING_LENGTHS
        .iter()
        .flat_map(|&k| separating_cycles(graph, face, k))
        .map(|(c, kind)| SeparatingCycleReport {
            cycle: c.labels(graph),
            interior: ls(&kind.interior),
            exterior: ls(&kind.exterior),
            special: (c.len() == 11).then(|| is_special_cycle(graph, &c).map(|v| v.special).unwrap_or(false)),
        })
        .collect();
    let is_eleven = walk.degree() == 11 && walk.is_cycle();
    let ears = if is_eleven { find_ears(graph, face).unwrap_or_default() } else { Vec::new() };
    let special_face = is_eleven.then(|| {
        let cert = is_special_face(graph, face);
        SpecialFaceReport {
            special: cert.is_valid(),
            adjacent_triangle: cert.adjacent_triangle.as_ref().map(|t| t.labels(graph)),
            collapses: cert.collapses.len(),
            violation: cert.violation,
        }
    });
    FaceAnalysis {
        face: ls(walk.walk()),
        degree: walk.degree(),
        is_cycle: walk.is_cycle(),
        chords,
        nonconsecutive_attachments: nonconsecutive_attachments(graph, face)
            .into_iter()
            .map(|(x, a, b)| (l(x), l(a), l(b)))
            .collect(),
        separating_cycles: separating,
        ears: ears
            .iter()
            .map(|e| EarReport { apex: l(e.apex), span: e.span.map(l) })
            .collect(),
        claw_centers: claw_centers(graph, face).map(|v| ls(&v)).unwrap_or_default(),
        d_claw_centers: d_claw_centers(graph, face)
            .unwrap_or_default()
            .into_iter()
            .map(|(a, b)| (l(a), l(b)))
            .collect(),
        special_face,
    }
}
