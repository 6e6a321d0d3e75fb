//! Precolouring extension by guarded reduction, with exhaustive search as
//! the fallback at every level.

use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use super::{brute_force_extend, qualify_face, verify_coloring, Coloring, FallbackReason, Trace};
use crate::class::{has_four_or_six_cycle, in_class, triangles};
use crate::plane::{pg1, CycleHandle, FaceId, PlaneGraph};
use crate::structure::{cycle_sides, is_special_cycle, separating_cycles, CycleKind};
use crate::surgery::{
    identify_diagonal, identify_six_face, remove_and_subdivide, split_separating, Surgery, SurgeryParams,
};

#[derive(Debug, Clone)]
pub struct ExtensionTask {
    pub graph: PlaneGraph,
    pub face: FaceId,
    /// Colours exactly the vertices of `face`.
    pub boundary: Coloring,
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub coloring: Coloring,
    pub trace: Trace,
}

/// An instance where the search proved that no extension exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfeasibleInstance {
    pub pg1: String,
    pub face: Vec<String>,
    pub boundary: Vec<(String, u8)>,
}

impl InfeasibleInstance {
    fn new(graph: &PlaneGraph, face: Option<FaceId>, phi: &Coloring) -> Self {
        InfeasibleInstance {
            pg1: pg1::write(graph),
            face: face.map_or_else(Vec::new, |f| graph.face(f).walk().iter().map(|&v| graph.label(v).to_string()).collect()),
            boundary: phi.domain().map(|v| (graph.label(v).to_string(), phi.get(v).unwrap())).collect(),
        }
    }
}

/// Appends the instance as one JSON line.
pub fn record_candidate(path: &Path, instance: &InfeasibleInstance) -> std::io::Result<()> {
    let mut file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{}", serde_json::to_string(instance).expect("serialisable"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("graph is not in the class (it has a 5-cycle, a 7-cycle or adjacent triangles)")]
    NotInClass,
    #[error("graph is not connected")]
    NotConnected,
    #[error("face of degree {degree} is neither a 3-face, a cyclic 9-face nor a special 11-face")]
    UnqualifiedFace { degree: usize },
    #[error("boundary colouring is not a proper colouring of exactly the face vertices: {0}")]
    ImproperBoundaryColoring(String),
    #[error("no extension exists")]
    Infeasible(Box<InfeasibleInstance>),
}

fn face_vertices_match(graph: &PlaneGraph, face: FaceId, phi: &Coloring) -> bool {
    let walk = graph.face(face);
    phi.len() == graph.vertex_count()
        && graph.vertices().all(|v| phi.get(v).is_some() == walk.contains(v))
        && phi.is_proper(graph)
}

/// Extends a proper colouring of a qualifying face to the whole graph.
pub fn extend_coloring(task: &ExtensionTask) -> Result<Extension, ColorError> {
    let ExtensionTask { graph, face, boundary } = task;
    if !in_class(graph) {
        return Err(ColorError::NotInClass);
    }
    if !graph.is_connected() {
        return Err(ColorError::NotConnected);
    }
    if face.0 >= graph.face_count() {
        return Err(ColorError::UnqualifiedFace { degree: 0 });
    }
    if qualify_face(graph, *face).is_none() {
        return Err(ColorError::UnqualifiedFace { degree: graph.face(*face).degree() });
    }
    if boundary.len() != graph.vertex_count() {
        return Err(ColorError::ImproperBoundaryColoring("size does not match the graph".into()));
    }
    if !face_vertices_match(graph, *face, boundary) {
        let why = if boundary.is_proper(graph) { "domain differs from the face vertices" } else { "not proper" };
        return Err(ColorError::ImproperBoundaryColoring(why.into()));
    }
    match solve(graph, *face, boundary) {
        Some((coloring, trace)) => Ok(Extension { coloring, trace }),
        None => Err(ColorError::Infeasible(Box::new(InfeasibleInstance::new(graph, Some(*face), boundary)))),
    }
}

fn fallback(graph: &PlaneGraph, phi: &Coloring, reason: FallbackReason) -> Option<(Coloring, Trace)> {
    brute_force_extend(graph, phi).map(|c| (c, Trace::FallbackSearch { sigma: graph.sigma(), reason }))
}

/// A reduction that passed its guard, ready to recurse.
enum Prepared {
    Single { surgery: Surgery, face: FaceId, phi: Coloring },
    Split { surgery: Surgery, outer_face: FaceId, outer_phi: Coloring },
}

fn labels(graph: &PlaneGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| graph.label(v).to_string()).collect()
}

fn detail(graph: &PlaneGraph, params: &SurgeryParams) -> Vec<String> {
    match params {
        SurgeryParams::SubdivideEdge { edge, .. } => labels(graph, &[edge.0, edge.1]),
        SurgeryParams::RemoveAndSubdivide { chord, removed } => labels(graph, &[chord.0, chord.1, *removed]),
        SurgeryParams::IdentifyDiagonal { pair, .. } => labels(graph, &[pair.0, pair.1]),
        SurgeryParams::IdentifySixFace { boundary, .. } => labels(graph, boundary),
        SurgeryParams::SplitSeparating { cycle, .. } => labels(graph, cycle),
    }
}

fn solve(graph: &PlaneGraph, face: FaceId, phi: &Coloring) -> Option<(Coloring, Trace)> {
    let sigma = graph.sigma();
    if phi.is_total() {
        return Some((phi.clone(), Trace::Direct { sigma }));
    }
    let Some(prepared) = next_reduction(graph, face, phi) else {
        let reason = if has_four_or_six_cycle(graph) {
            FallbackReason::NoApplicableReduction
        } else {
            FallbackReason::NoFourOrSixCycle
        };
        return fallback(graph, phi, reason);
    };
    let done = match prepared {
        Prepared::Single { surgery, face: f, phi: p } => {
            let part = &surgery.parts[0].graph;
            solve(part, f, &p).and_then(|(c, t)| {
                let back = surgery.transfer.pull_back(graph, &[c]).ok()?;
                let trace = Trace::Reduce {
                    surgery: surgery.kind(),
                    detail: detail(graph, &surgery.params),
                    sigma,
                    next: Box::new(t),
                };
                Some((back, trace))
            })
        }
        Prepared::Split { surgery, outer_face, outer_phi } => solve_split(graph, &surgery, outer_face, &outer_phi),
    };
    match done {
        Some((c, t)) if verify_coloring(graph, &c) && c.extends(phi) => Some((c, t)),
        _ => fallback(graph, phi, FallbackReason::SubproblemFailed),
    }
}

fn solve_split(graph: &PlaneGraph, surgery: &Surgery, outer_face: FaceId, outer_phi: &Coloring) -> Option<(Coloring, Trace)> {
    let SurgeryParams::SplitSeparating { cycle, padding } = &surgery.params else { unreachable!() };
    let outer = &surgery.parts[0].graph;
    let inner = &surgery.parts[1];
    let (c_out, t_out) = solve(outer, outer_face, outer_phi)?;
    let image = &surgery.transfer.parts[0].image;
    let mut chi = Coloring::empty(graph.vertex_count());
    for &v in cycle {
        chi.set(v, c_out.get(image[v].unwrap()).unwrap());
    }
    let inner_phi = surgery.transfer.push_forward(1, &inner.graph, &chi).ok()?;
    let (c_in, t_in) = solve(&inner.graph, inner.face.unwrap(), &inner_phi)?;
    let back = surgery.transfer.pull_back(graph, &[c_out, c_in]).ok()?;
    let trace = Trace::Split {
        cycle: labels(graph, cycle),
        padding: *padding,
        sigma: graph.sigma(),
        outer: Box::new(t_out),
        inner: Box::new(t_in),
    };
    Some((back, trace))
}

/// The conditions a reduced problem must meet before the engine recurses.
fn admissible(parent_sigma: usize, graph: &PlaneGraph, face: FaceId, phi: &Coloring) -> bool {
    graph.sigma() < parent_sigma
        && graph.is_connected()
        && face_vertices_match(graph, face, phi)
        && in_class(graph)
        && qualify_face(graph, face).is_some()
}

fn prepare_single(graph: &PlaneGraph, face: FaceId, phi: &Coloring, surgery: Surgery) -> Option<Prepared> {
    let part = &surgery.parts[0].graph;
    let f = surgery.map_face(0, graph, face)?;
    let p = surgery.transfer.push_forward(0, part, phi).ok()?;
    admissible(graph.sigma(), part, f, &p).then_some(Prepared::Single { surgery, face: f, phi: p })
}

fn prepare_split(graph: &PlaneGraph, face: FaceId, phi: &Coloring, cycle: &CycleHandle, padding: usize) -> Option<Prepared> {
    let surgery = split_separating(graph, cycle, padding).ok()?;
    let outer = &surgery.parts[0].graph;
    let outer_face = surgery.map_face(0, graph, face)?;
    let outer_phi = surgery.transfer.push_forward(0, outer, phi).ok()?;
    if !admissible(graph.sigma(), outer, outer_face, &outer_phi) {
        return None;
    }
    let inner = &surgery.parts[1];
    let inner_face = inner.face?;
    let g = &inner.graph;
    let ok = g.sigma() < graph.sigma()
        && g.is_connected()
        && in_class(g)
        && qualify_face(g, inner_face).is_some();
    ok.then_some(Prepared::Split { surgery, outer_face, outer_phi })
}

/// Some vertex of the interior adjacent to both ends of a cycle edge.
fn has_inner_triangle_on_edge(graph: &PlaneGraph, cycle: &CycleHandle, kind: &CycleKind) -> bool {
    cycle.darts().any(|(a, b)| kind.interior.iter().any(|&x| graph.has_edge(x, a) && graph.has_edge(x, b)))
}

fn split_candidates(graph: &PlaneGraph, face: FaceId, phi: &Coloring, len: usize, padding: usize) -> Option<Prepared> {
    for (cycle, kind) in separating_cycles(graph, face, len) {
        if len == 11 {
            if !has_inner_triangle_on_edge(graph, &cycle, &kind) {
                continue;
            }
            match is_special_cycle(graph, &cycle) {
                Ok(v) if v.special => {}
                _ => continue,
            }
        }
        if let Some(p) = prepare_split(graph, face, phi, &cycle, padding) {
            return Some(p);
        }
    }
    None
}

fn chord_candidates(graph: &PlaneGraph, face: FaceId, phi: &Coloring) -> Option<Prepared> {
    let walk = graph.face(face);
    if walk.degree() < 9 {
        return None;
    }
    let b = walk.walk();
    let d = b.len();
    for i in 0..d {
        let (u, w, v) = (b[(i + d - 1) % d], b[i], b[(i + 1) % d]);
        if graph.degree(w) != 2 || !graph.has_edge(u, v) {
            continue;
        }
        if let Ok(s) = remove_and_subdivide(graph, (u, v), w) {
            if let Some(p) = prepare_single(graph, face, phi, s) {
                return Some(p);
            }
        }
    }
    None
}

fn shares_edge(graph: &PlaneGraph, f: FaceId, g: FaceId) -> bool {
    graph.face(f).darts().any(|(a, b)| graph.face_of_dart(b, a) == Some(g))
}

fn four_face_candidates(graph: &PlaneGraph, face: FaceId, phi: &Coloring) -> Option<Prepared> {
    let on_c = |v: usize| graph.face(face).contains(v);
    let mut options: Vec<(bool, FaceId, (usize, usize))> = Vec::new();
    for f in graph.face_ids() {
        let walk = graph.face(f);
        if f == face || walk.degree() != 4 || !walk.is_cycle() {
            continue;
        }
        let b = walk.walk();
        let near = shares_edge(graph, f, face);
        for &(u, w) in &[(b[0], b[2]), (b[2], b[0]), (b[1], b[3]), (b[3], b[1])] {
            let fits = if near { on_c(u) && !on_c(w) } else { !on_c(u) && !on_c(w) && u < w };
            if fits {
                options.push((!near, f, (u, w)));
            }
        }
    }
    options.sort();
    options.into_iter().find_map(|(_, f, pair)| {
        let s = identify_diagonal(graph, f, pair).ok()?;
        prepare_single(graph, face, phi, s)
    })
}

fn six_face_candidates(graph: &PlaneGraph, face: FaceId, phi: &Coloring) -> Option<Prepared> {
    let c = graph.face(face);
    let on_c = |v: usize| c.contains(v);
    let touches_c = |v: usize| graph.neighbors(v).iter().any(|&x| on_c(x));
    for f in graph.face_ids() {
        let walk = graph.face(f);
        if f == face || walk.degree() != 6 || !walk.is_cycle() {
            continue;
        }
        let b = walk.walk();
        let anchors: Vec<usize> = if b.iter().any(|&v| on_c(v)) {
            (0..6).filter(|&i| on_c(b[i]) && (!on_c(b[(i + 1) % 6]) || !on_c(b[(i + 5) % 6]))).map(|i| b[i]).collect()
        } else {
            (0..6).filter(|&i| !touches_c(b[(i + 1) % 6])).map(|i| b[i]).collect()
        };
        for u0 in anchors {
            if let Ok(s) = identify_six_face(graph, f, u0) {
                if let Some(p) = prepare_single(graph, face, phi, s) {
                    return Some(p);
                }
            }
        }
    }
    None
}

fn next_reduction(graph: &PlaneGraph, face: FaceId, phi: &Coloring) -> Option<Prepared> {
    split_candidates(graph, face, phi, 3, 0)
        .or_else(|| split_candidates(graph, face, phi, 9, 0))
        .or_else(|| split_candidates(graph, face, phi, 11, 0))
        .or_else(|| chord_candidates(graph, face, phi))
        .or_else(|| split_candidates(graph, face, phi, 4, 5))
        .or_else(|| four_face_candidates(graph, face, phi))
        .or_else(|| split_candidates(graph, face, phi, 6, 3))
        .or_else(|| six_face_candidates(graph, face, phi))
}

/// A proper 3-colouring of a connected graph in the class.
///
/// Graphs without triangles, or without 4- and 6-cycles, go straight to the
/// exhaustive search. Otherwise the first triangle is coloured `0 1 2` and
/// the colouring is extended to both of its sides.
pub fn color_graph(graph: &PlaneGraph) -> Result<Extension, ColorError> {
    if !in_class(graph) {
        return Err(ColorError::NotInClass);
    }
    if !graph.is_connected() {
        return Err(ColorError::NotConnected);
    }
    let empty = Coloring::empty(graph.vertex_count());
    let infeasible = || ColorError::Infeasible(Box::new(InfeasibleInstance::new(graph, None, &empty)));
    let ts = triangles(graph);
    let base = if ts.is_empty() {
        Some(FallbackReason::TriangleFree)
    } else if !has_four_or_six_cycle(graph) {
        Some(FallbackReason::NoFourOrSixCycle)
    } else {
        None
    };
    if let Some(reason) = base {
        let (coloring, trace) = fallback(graph, &empty, reason).ok_or_else(infeasible)?;
        return Ok(Extension { coloring, trace });
    }
    let t = ts[0];
    let tri = CycleHandle::new(graph, t.to_vec()).expect("triangle");
    let phi = Coloring::on_vertices(graph.vertex_count(), &t, &[0, 1, 2]);
    let sides = cycle_sides(graph, &tri).expect("triangle");
    if sides.right.is_empty() || sides.left.is_empty() {
        let face = graph.find_face_either(&t).expect("non-separating triangle bounds a face");
        let ext = extend_coloring(&ExtensionTask { graph: graph.clone(), face, boundary: phi })?;
        return Ok(ext);
    }
    let surgery = split_separating(graph, &tri, 0).expect("separating triangle");
    let mut colorings = Vec::new();
    let mut traces = Vec::new();
    for (i, part) in surgery.parts.iter().enumerate() {
        let image = &surgery.transfer.parts[i].image;
        let mapped: Vec<usize> = t.iter().map(|&v| image[v].unwrap()).collect();
        let face = part.graph.find_face_either(&mapped).expect("triangle face");
        let boundary = surgery.transfer.push_forward(i, &part.graph, &phi).expect("proper");
        let ext = extend_coloring(&ExtensionTask { graph: part.graph.clone(), face, boundary })?;
        colorings.push(ext.coloring);
        traces.push(ext.trace);
    }
    let coloring = surgery.transfer.pull_back(graph, &colorings).map_err(|_| infeasible())?;
    let inner = traces.pop().unwrap();
    let outer = traces.pop().unwrap();
    let trace = Trace::Split {
        cycle: labels(graph, &t),
        padding: 0,
        sigma: graph.sigma(),
        outer: Box::new(outer),
        inner: Box::new(inner),
    };
    Ok(Extension { coloring, trace })
}
