//! Graph reductions, each recording how colourings move between the
//! original graph and the result.

mod identify;
mod split;
mod transfer;

use serde::Serialize;
use thiserror::Error;

use crate::plane::{FaceId, GraphError, PlaneGraph, RotationSystem};

pub use identify::{identify_across, identify_diagonal, identify_six_face};
pub use split::split_separating;
pub use transfer::{ColoringTransfer, PaddingPath, PartMap, TransferError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SurgeryKind {
    SubdivideEdge,
    RemoveAndSubdivide,
    IdentifyDiagonal,
    IdentifySixFace,
    SplitSeparating,
}

impl SurgeryKind {
    pub const ALL: [SurgeryKind; 5] = [
        SurgeryKind::SubdivideEdge,
        SurgeryKind::RemoveAndSubdivide,
        SurgeryKind::IdentifyDiagonal,
        SurgeryKind::IdentifySixFace,
        SurgeryKind::SplitSeparating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SurgeryKind::SubdivideEdge => "subdivide-edge",
            SurgeryKind::RemoveAndSubdivide => "remove-and-subdivide",
            SurgeryKind::IdentifyDiagonal => "identify-diagonal",
            SurgeryKind::IdentifySixFace => "identify-six-face",
            SurgeryKind::SplitSeparating => "split-separating",
        }
    }

    pub fn is_identification(self) -> bool {
        matches!(self, SurgeryKind::IdentifyDiagonal | SurgeryKind::IdentifySixFace)
    }
}

/// What a surgery operated on, in vertex indices of the original graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum SurgeryParams {
    SubdivideEdge { edge: (usize, usize), k: usize },
    RemoveAndSubdivide { chord: (usize, usize), removed: usize },
    IdentifyDiagonal { face: FaceId, pair: (usize, usize) },
    IdentifySixFace { face: FaceId, boundary: [usize; 6] },
    SplitSeparating { cycle: Vec<usize>, padding: usize },
}

impl SurgeryParams {
    pub fn kind(&self) -> SurgeryKind {
        match self {
            SurgeryParams::SubdivideEdge { .. } => SurgeryKind::SubdivideEdge,
            SurgeryParams::RemoveAndSubdivide { .. } => SurgeryKind::RemoveAndSubdivide,
            SurgeryParams::IdentifyDiagonal { .. } => SurgeryKind::IdentifyDiagonal,
            SurgeryParams::IdentifySixFace { .. } => SurgeryKind::IdentifySixFace,
            SurgeryParams::SplitSeparating { .. } => SurgeryKind::SplitSeparating,
        }
    }
}

/// One result graph. `face` is a face the surgery itself designates (the
/// padded cycle of a split's inner part).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub graph: PlaneGraph,
    pub face: Option<FaceId>,
}

#[derive(Debug, Clone)]
pub struct Surgery {
    pub params: SurgeryParams,
    pub parts: Vec<Part>,
    pub transfer: ColoringTransfer,
}

impl Surgery {
    pub fn kind(&self) -> SurgeryKind {
        self.params.kind()
    }

    /// The face of part `part` that contains the image of a surviving edge of
    /// `face`, provided it also carries every surviving boundary vertex.
    pub fn map_face(&self, part: usize, original: &PlaneGraph, face: FaceId) -> Option<FaceId> {
        let image = &self.transfer.parts[part].image;
        let g = &self.parts[part].graph;
        let walk = original.face(face);
        let dart = walk.darts().find_map(|(a, b)| {
            let (x, y) = (image[a]?, image[b]?);
            g.has_edge(x, y).then_some((x, y))
        })?;
        let id = g.face_of_dart(dart.0, dart.1)?;
        let mapped = g.face(id);
        walk.walk().iter().filter_map(|&v| image[v]).all(|x| mapped.contains(x)).then_some(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("no edge between the given vertices")]
    NoSuchEdge,
    #[error("padding must be at least one vertex")]
    EmptySubdivision,
    #[error("face has degree {0}, expected a 4-face bounded by a cycle")]
    NotAFourFace(usize),
    #[error("face has degree {0}, expected a 6-face bounded by a cycle")]
    NotASixFace(usize),
    #[error("diagonal vertices are adjacent")]
    DiagonalAdjacent,
    #[error("identified vertices are adjacent")]
    MergeWouldLoop,
    #[error("cycle is not separating")]
    NotSeparating,
    #[error("padding {0} is not one of 0, 3, 5")]
    InvalidPadding(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Label for a new vertex on the edge `uv`.
fn path_label(sys: &RotationSystem, u: usize, v: usize, i: usize) -> String {
    sys.fresh_label(&format!("{}~{}.{}", sys.labels[u], sys.labels[v], i))
}

/// Replaces the edge `uv` in `sys` with a path through `k` new vertices and
/// returns them in order from `u`.
fn subdivide_in_place(sys: &mut RotationSystem, u: usize, v: usize, k: usize) -> Vec<usize> {
    let mut path = Vec::with_capacity(k);
    for i in 1..=k {
        let label = path_label(sys, u, v, i);
        path.push(sys.add_vertex(label));
    }
    let pu = sys.position(u, v).expect("edge");
    let pv = sys.position(v, u).expect("edge");
    sys.rotation[u][pu] = path[0];
    sys.rotation[v][pv] = path[k - 1];
    for i in 0..k {
        let prev = if i == 0 { u } else { path[i - 1] };
        let next = if i + 1 == k { v } else { path[i + 1] };
        sys.rotation[path[i]] = vec![prev, next];
    }
    path
}

/// Replaces edge `uv` with a path of `k` new degree-2 vertices.
pub fn subdivide_edge(graph: &PlaneGraph, edge: (usize, usize), k: usize) -> Result<Surgery, SurgeryError> {
    let (u, v) = edge;
    if u >= graph.vertex_count() || v >= graph.vertex_count() || !graph.has_edge(u, v) {
        return Err(SurgeryError::NoSuchEdge);
    }
    if k == 0 {
        return Err(SurgeryError::EmptySubdivision);
    }
    let mut sys = graph.rotation_system();
    let path = subdivide_in_place(&mut sys, u, v, k);
    let result = sys.build()?;
    let mut map = PartMap::identity(graph.vertex_count());
    map.padding.push(PaddingPath { ends: (u, v), path });
    Ok(Surgery {
        params: SurgeryParams::SubdivideEdge { edge, k },
        parts: vec![Part { graph: result, face: None }],
        transfer: ColoringTransfer { original_len: graph.vertex_count(), parts: vec![map], dropped: Vec::new() },
    })
}

/// Deletes the degree-2 vertex `w` of the 3-face `uvw` and inserts a new
/// vertex `s` into `uv`. The transfer sends `w` to `s`, so a boundary
/// colour of `w` is carried by `s`.
pub fn remove_and_subdivide(graph: &PlaneGraph, chord: (usize, usize), w: usize) -> Result<Surgery, SurgeryError> {
    let (u, v) = chord;
    let n = graph.vertex_count();
    if u >= n || v >= n || w >= n || !graph.has_edge(u, v) {
        return Err(SurgeryError::NoSuchEdge);
    }
    let bad = |m: &str| Err(SurgeryError::PreconditionViolated(m.to_string()));
    if graph.degree(w) != 2 || !graph.has_edge(u, w) || !graph.has_edge(v, w) {
        return bad("the cut-off vertex must have exactly the two chord ends as neighbours");
    }
    if graph.find_face_either(&[u, v, w]).is_none() {
        return bad("the chord and the cut-off vertex do not bound a 3-face");
    }
    if n == 3 {
        return bad("the triangle is the whole graph");
    }
    let mut sys = graph.rotation_system();
    let label = sys.fresh_label(&format!("{}~{}", sys.labels[u], sys.labels[v]));
    let s = subdivide_in_place(&mut sys, u, v, 1)[0];
    sys.labels[s] = label;
    for x in [u, v] {
        sys.rotation[x].retain(|&y| y != w);
    }
    sys.rotation[w].clear();
    let mut keep = vec![true; sys.vertex_count()];
    keep[w] = false;
    let staged = sys.build()?;
    let (result, renumber) = staged.restrict(&keep, |_, _| true);
    let mut image: Vec<Option<usize>> = (0..n).map(|x| renumber[x]).collect();
    image[w] = renumber[s];
    Ok(Surgery {
        params: SurgeryParams::RemoveAndSubdivide { chord, removed: w },
        parts: vec![Part { graph: result, face: None }],
        transfer: ColoringTransfer {
            original_len: n,
            parts: vec![PartMap { image, padding: Vec::new() }],
            dropped: Vec::new(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorer::{brute_force_extend, verify_coloring, Coloring};
    use crate::plane::{cycle_graph, polygon_with_chords};

    #[test]
    fn subdividing_a_triangle_edge_gives_a_square() {
        let t = cycle_graph(3);
        let s = subdivide_edge(&t, (0, 1), 1).unwrap();
        let g = &s.parts[0].graph;
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (4, 4, 2));
        assert!(g.faces().iter().all(|f| f.degree() == 4));
        assert!(matches!(subdivide_edge(&cycle_graph(4), (0, 2), 1), Err(SurgeryError::NoSuchEdge)));
    }

    #[test]
    fn five_padding_vertices_make_a_nine_face() {
        let s = subdivide_edge(&cycle_graph(4), (0, 1), 5).unwrap();
        let g = &s.parts[0].graph;
        assert_eq!(g.vertex_count(), 9);
        assert!(g.faces().iter().all(|f| f.degree() == 9 && f.is_cycle()));
        assert_eq!(s.map_face(0, &cycle_graph(4), FaceId(0)).map(|f| g.face(f).degree()), Some(9));
    }

    #[test]
    fn padding_is_coloured_for_any_endpoint_colours() {
        for k in 1..=4 {
            let s = subdivide_edge(&cycle_graph(4), (0, 1), k).unwrap();
            let g = &s.parts[0].graph;
            let phi = Coloring::on_vertices(4, &[0, 1], &[2, 0]);
            let pushed = s.transfer.push_forward(0, g, &phi).unwrap();
            assert!(pushed.is_proper(g));
            let path = &s.transfer.parts[0].padding[0].path;
            assert!(path.iter().all(|&p| pushed.get(p).is_some()));
        }
    }

    #[test]
    fn lemma_three_chord_reduction() {
        // 9-cycle with chord 0-2 cutting off vertex 1
        let g = polygon_with_chords(9, &[(0, 2)]).unwrap();
        let s = remove_and_subdivide(&g, (0, 2), 1).unwrap();
        let r = &s.parts[0].graph;
        assert_eq!(r.sigma(), g.sigma() - 1);
        assert_eq!(r.vertex_count(), 9);
        assert!(r.faces().iter().all(|f| f.degree() == 9 && f.is_cycle()));
        let outer = g.find_face_either(&(0..9).collect::<Vec<_>>()).unwrap();
        assert!(s.map_face(0, &g, outer).is_some());

        let phi = Coloring::on_vertices(9, &(0..9).collect::<Vec<_>>(), &[0, 1, 2, 0, 1, 0, 1, 0, 1]);
        let pushed = s.transfer.push_forward(0, r, &phi).unwrap();
        let ext = brute_force_extend(r, &pushed).unwrap();
        let back = s.transfer.pull_back(&g, &[ext]).unwrap();
        assert!(verify_coloring(&g, &back));
        assert!(back.extends(&phi));
    }

    #[test]
    fn lone_triangle_is_rejected() {
        let t = cycle_graph(3);
        assert!(matches!(remove_and_subdivide(&t, (0, 2), 1), Err(SurgeryError::PreconditionViolated(_))));
    }
}
