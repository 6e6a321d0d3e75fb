//! Instances set up for each surgery under the hypotheses the reductions
//! are justified by.

use serde::Serialize;

use super::{generate_instance, glue_faces, truncated_around, GenParams, Grower};
use crate::class::{cycles_of_length, has_cycle_of_length, in_class};
use crate::colorer::qualify_face;
use crate::plane::{CycleHandle, FaceId, PlaneGraph};
use crate::structure::{
    chords_of, find_ears, is_two_connected, is_special_cycle, nonconsecutive_attachments, orient_exterior, separating_cycles,
};
use crate::surgery::{
    identify_diagonal, identify_six_face, remove_and_subdivide, split_separating, subdivide_edge, Surgery,
    SurgeryError, SurgeryKind, SurgeryParams,
};

/// Properties a minimal counterexample is shown to have before the
/// identifications are applied, evaluated for a designated face.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ProofContext {
    pub in_class: bool,
    pub face_qualifies: bool,
    pub two_connected: bool,
    /// Every vertex off the face has degree at least 3.
    pub min_degree_three: bool,
    /// No 4-cycle or 6-cycle shares an edge with a triangle.
    pub short_even_cycles_clear: bool,
    pub chordless: bool,
    /// Off-face vertices only attach to consecutive boundary vertices.
    pub attachments_consecutive: bool,
    /// No separating 3- or 9-cycle.
    pub no_separating_short: bool,
    pub no_special_cycle: bool,
    /// Only constrains 11-faces.
    pub no_ears: bool,
    pub no_separating_four: bool,
    pub no_four_cycle: bool,
    pub no_separating_six: bool,
}

impl ProofContext {
    pub fn of(graph: &PlaneGraph, face: FaceId) -> Self {
        let walk = graph.face(face);
        let Some(c) = walk.as_cycle() else { return ProofContext::default() };
        let sep = |k| separating_cycles(graph, face, k).is_empty();
        ProofContext {
            in_class: in_class(graph),
            face_qualifies: qualify_face(graph, face).is_some(),
            two_connected: is_two_connected(graph),
            min_degree_three: graph.vertices().all(|v| c.contains(v) || graph.degree(v) >= 3),
            short_even_cycles_clear: [4, 6].iter().all(|&k| {
                cycles_of_length(graph, k).iter().all(|cyc| cyc.darts().all(|(a, b)| !on_triangle(graph, a, b)))
            }),
            chordless: chords_of(graph, &c).map(|v| v.is_empty()).unwrap_or(false),
            attachments_consecutive: nonconsecutive_attachments(graph, face).is_empty(),
            no_separating_short: sep(3) && sep(9),
            no_special_cycle: separating_cycles(graph, face, 11)
                .iter()
                .all(|(cyc, _)| !is_special_cycle(graph, cyc).map(|v| v.special).unwrap_or(false)),
            no_ears: walk.degree() != 11 || find_ears(graph, face).map(|e| e.is_empty()).unwrap_or(false),
            no_separating_four: sep(4),
            no_four_cycle: !has_cycle_of_length(graph, 4),
            no_separating_six: sep(6),
        }
    }

    pub fn common(&self) -> bool {
        self.in_class
            && self.face_qualifies
            && self.two_connected
            && self.short_even_cycles_clear
            && self.chordless
            && self.attachments_consecutive
            && self.no_separating_short
            && self.no_special_cycle
            && self.no_ears
    }

    /// [`common`](Self::common) plus the degree bound, which no 6-face
    /// configuration of at most 22 vertices found so far satisfies.
    /// [`strict_fixtures`] supplies larger ones.
    pub fn strict(&self) -> bool {
        self.common() && self.min_degree_three
    }

    pub fn four_face_ready(&self) -> bool {
        self.common() && self.no_separating_four
    }

    pub fn six_face_ready(&self) -> bool {
        self.four_face_ready() && self.no_four_cycle && self.no_separating_six
    }
}

fn on_triangle(graph: &PlaneGraph, a: usize, b: usize) -> bool {
    graph.neighbors(a).iter().any(|&x| graph.has_edge(x, b))
}

/// No edge of the face lies on a triangle.
fn face_free_of_triangles(graph: &PlaneGraph, face: FaceId) -> bool {
    graph.face(face).darts().all(|(a, b)| !on_triangle(graph, a, b))
}

/// The diagonal of the 4-face `quad` chosen relative to the designated
/// face: one end on it and the other not, attached to it only through the
/// two remaining corners, when the faces share an edge; otherwise both ends
/// off it.
pub fn proof_diagonal(graph: &PlaneGraph, face: FaceId, quad: FaceId) -> Option<(usize, usize)> {
    let c = graph.face(face);
    let b = graph.face(quad).walk();
    let near = graph.face(quad).darts().any(|(a, x)| graph.face_of_dart(x, a) == Some(face));
    for i in 0..4 {
        let (u, v, w, x) = (b[i], b[(i + 1) % 4], b[(i + 2) % 4], b[(i + 3) % 4]);
        if near {
            let attach_ok = graph.neighbors(w).iter().all(|&y| !c.contains(y) || y == v || y == x);
            if c.contains(u) && !c.contains(w) && attach_ok {
                return Some((u, w));
            }
        } else if !c.contains(u) && !c.contains(w) {
            return Some((u, w));
        }
    }
    None
}

/// The anchor `u0` of a 6-face: a boundary vertex on the designated face
/// whose successor is off it, or, when the faces are disjoint, the
/// predecessor of a vertex with no neighbour on the designated face.
pub fn proof_anchor(graph: &PlaneGraph, face: FaceId, hex: FaceId) -> Option<usize> {
    let c = graph.face(face);
    let b = graph.face(hex).walk();
    if b.iter().any(|&v| c.contains(v)) {
        (0..6).find(|&i| c.contains(b[i]) && !c.contains(b[(i + 1) % 6])).map(|i| b[i])
    } else {
        (0..6)
            .find(|&i| graph.neighbors(b[(i + 1) % 6]).iter().all(|&y| !c.contains(y)))
            .map(|i| b[i])
    }
}

/// A graph, its designated face and one surgery to apply.
#[derive(Debug, Clone)]
pub struct SurgeryFixture {
    pub name: String,
    pub graph: PlaneGraph,
    pub face: FaceId,
    pub params: SurgeryParams,
}

impl SurgeryFixture {
    pub fn kind(&self) -> SurgeryKind {
        self.params.kind()
    }

    pub fn apply(&self) -> Result<Surgery, SurgeryError> {
        let g = &self.graph;
        match &self.params {
            SurgeryParams::SubdivideEdge { edge, k } => subdivide_edge(g, *edge, *k),
            SurgeryParams::RemoveAndSubdivide { chord, removed } => remove_and_subdivide(g, *chord, *removed),
            SurgeryParams::IdentifyDiagonal { face, pair } => identify_diagonal(g, *face, *pair),
            SurgeryParams::IdentifySixFace { face, boundary } => identify_six_face(g, *face, boundary[0]),
            SurgeryParams::SplitSeparating { cycle, padding } => {
                let c = CycleHandle::new(g, cycle.clone()).map_err(SurgeryError::Graph)?;
                split_separating(g, &c, *padding)
            }
        }
    }
}

const OUTER_LENGTHS: [usize; 3] = [9, 11, 3];

fn base_params(seed: u64, n: usize, outer: usize) -> GenParams {
    let mut p = GenParams::new(n, seed);
    p.outer_face = Some(outer);
    p.max_attempts = 4_000;
    p
}

fn subdivide_fixture(seed: u64) -> Option<SurgeryFixture> {
    let outer = OUTER_LENGTHS[(seed % 3) as usize];
    let n = 12 + (seed % 8) as usize;
    let gen = generate_instance(&base_params(seed, n, outer)).ok()?;
    let face = gen.outer?;
    qualify_face(&gen.graph, face)?;
    let walk = gen.graph.face(face).walk();
    let i = (seed / 3) as usize % walk.len();
    let edge = (walk[i], walk[(i + 1) % walk.len()]);
    let k = [1, 3, 5][(seed / 7 % 3) as usize];
    Some(SurgeryFixture {
        name: format!("subdivide-{seed}"),
        graph: gen.graph,
        face,
        params: SurgeryParams::SubdivideEdge { edge, k },
    })
}

fn chord_fixture(seed: u64) -> Option<SurgeryFixture> {
    let outer = if seed % 4 == 3 { 11 } else { 9 };
    let n = 12 + (seed % 9) as usize;
    let gen = generate_instance(&base_params(seed, n, outer)).ok()?;
    let outer_face = gen.outer?;
    let g = &gen.graph;
    let walk = g.face(outer_face).walk().to_vec();
    let d = walk.len();
    for i in 0..d {
        let (u, s, v) = (walk[(i + d - 1) % d], walk[i], walk[(i + 1) % d]);
        if g.degree(s) != 2 || g.has_edge(u, v) {
            continue;
        }
        let inner = g.face_of_dart(u, s)?;
        let inner = if inner == outer_face { g.face_of_dart(s, u)? } else { inner };
        let iw = g.face(inner).walk();
        let pu = iw.iter().position(|&x| x == u)?;
        let pv = iw.iter().position(|&x| x == v)?;
        let grower = Grower::new(g.clone(), None);
        let Some(h) = grower.with_path(inner, pu, pv, 0) else { continue };
        let face = h.face_of_dart(walk[0], walk[1]).filter(|&f| h.face(f).degree() == d)?;
        if !in_class(&h) || qualify_face(&h, face).is_none() {
            continue;
        }
        return Some(SurgeryFixture {
            name: format!("chord-{seed}"),
            graph: h,
            face,
            params: SurgeryParams::RemoveAndSubdivide { chord: (u, v), removed: s },
        });
    }
    None
}

/// The generated graph with chords added until every vertex off the
/// protected face has degree at least 3.
fn saturated(gen: super::Generated) -> Option<(PlaneGraph, FaceId)> {
    let face = gen.outer?;
    let walk = gen.graph.face(face).walk();
    let dart = (walk[0], walk[1]);
    let mut fixed = vec![false; gen.graph.vertex_count()];
    for &v in walk {
        fixed[v] = true;
    }
    let mut grower = Grower::new(gen.graph, Some(dart));
    if !grower.raise_degrees(&fixed) {
        return None;
    }
    let face = grower.protected_face()?;
    Some((grower.graph, face))
}

/// Parameters for identifying across `target` (a 4-face or a 6-face) by the
/// proof's choice of vertices, if the face has no edge on a triangle.
fn identification_at(graph: &PlaneGraph, face: FaceId, target: FaceId) -> Option<SurgeryParams> {
    let walk = graph.face(target);
    if target == face || !walk.is_cycle() || !face_free_of_triangles(graph, target) {
        return None;
    }
    match walk.degree() {
        4 => proof_diagonal(graph, face, target).map(|pair| SurgeryParams::IdentifyDiagonal { face: target, pair }),
        6 => {
            let u0 = proof_anchor(graph, face, target)?;
            let w = walk.walk();
            let i0 = w.iter().position(|&x| x == u0).unwrap();
            Some(SurgeryParams::IdentifySixFace { face: target, boundary: std::array::from_fn(|i| w[(i0 + i) % 6]) })
        }
        _ => None,
    }
}

fn first_identification(graph: &PlaneGraph, face: FaceId, len: usize) -> Option<SurgeryParams> {
    graph.face_ids().filter(|&f| graph.face(f).degree() == len).find_map(|f| identification_at(graph, face, f))
}

fn diagonal_fixture(seed: u64) -> Option<SurgeryFixture> {
    let outer = OUTER_LENGTHS[(seed % 3) as usize];
    let n = 12 + (seed % 11) as usize;
    let gen = generate_instance(&base_params(seed, n, outer)).ok()?;
    let (g, face) = saturated(gen.clone()).unwrap_or_else(|| (gen.graph, gen.outer.unwrap()));
    if !g.face_ids().any(|f| g.face(f).degree() == 4) || !ProofContext::of(&g, face).four_face_ready() {
        return None;
    }
    let params = first_identification(&g, face, 4)?;
    Some(SurgeryFixture { name: format!("diagonal-{seed}"), graph: g, face, params })
}

fn six_face_fixture(seed: u64) -> Option<SurgeryFixture> {
    let outer = OUTER_LENGTHS[(seed % 3) as usize];
    let n = 12 + (seed % 11) as usize;
    let mut params = base_params(seed, n, outer);
    params.forbid_four_cycles = true;
    let gen = generate_instance(&params).ok()?;
    let face = gen.outer?;
    let g = gen.graph;
    if !g.face_ids().any(|f| g.face(f).degree() == 6) || !ProofContext::of(&g, face).six_face_ready() {
        return None;
    }
    let params = first_identification(&g, face, 6)?;
    Some(SurgeryFixture { name: format!("six-face-{seed}"), graph: g, face, params })
}

/// An identification instance meeting every precondition including the
/// degree bound: a cubic graph truncated away from one 4-face or 6-face,
/// with a triangle or a 9-face designated. These run to 30 to 70 vertices.
fn strict_identification(kind: SurgeryKind, seed: u64) -> Option<SurgeryFixture> {
    let len = match kind {
        SurgeryKind::IdentifyDiagonal => 4,
        SurgeryKind::IdentifySixFace => 6,
        _ => return None,
    };
    let (g, target) = truncated_around(seed, 16 + 2 * (seed % 12) as usize, len)?;
    if !in_class(&g) {
        return None;
    }
    let faces: Vec<FaceId> =
        g.face_ids().filter(|&f| f != target && matches!(g.face(f).degree(), 3 | 9) && qualify_face(&g, f).is_some()).collect();
    if faces.is_empty() {
        return None;
    }
    let start = (seed as usize) % faces.len();
    for &face in faces.iter().cycle().skip(start).take(3) {
        let ctx = ProofContext::of(&g, face);
        let ready = if len == 4 { ctx.four_face_ready() } else { ctx.six_face_ready() };
        if !(ctx.strict() && ready) {
            continue;
        }
        if let Some(params) = identification_at(&g, face, target) {
            return Some(SurgeryFixture { name: format!("{}-strict-{seed}", kind.name()), graph: g, face, params });
        }
    }
    None
}

/// Up to `count` identification fixtures of `kind` meeting the degree bound,
/// trying seeds `base..base + budget`.
pub fn strict_fixtures(kind: SurgeryKind, count: usize, base: u64, budget: usize) -> Vec<SurgeryFixture> {
    (base..base + budget as u64).filter_map(|s| strict_identification(kind, s)).take(count).collect()
}

fn split_fixture(seed: u64) -> Option<SurgeryFixture> {
    let len = [3, 4, 6, 9][(seed % 4) as usize];
    let padding = match len {
        4 => 5,
        6 => 3,
        _ => 0,
    };
    let outer = OUTER_LENGTHS[(seed / 4 % 3) as usize];
    let n_outer = (outer + 2).max(len + 3) + (seed % 5) as usize;
    let host = generate_instance(&base_params(seed, n_outer, outer)).ok()?;
    let face = host.outer?;
    let a = &host.graph;
    let fa = a.face_ids().find(|&f| f != face && a.face(f).degree() == len && a.face(f).is_cycle())?;
    let n_inner = len + 1 + (seed / 5 % 6) as usize;
    let guest = generate_instance(&base_params(seed ^ 0x9e37, n_inner.max(len + 1), len)).ok()?;
    let fb = guest.outer?;
    let (g, _) = glue_faces(a, fa, &guest.graph, fb, (seed % len as u64) as usize).ok()?;
    if g.vertex_count() > 22 || !in_class(&g) {
        return None;
    }
    let face = g.face_of_dart(a.face(face).walk()[0], a.face(face).walk()[1])?;
    qualify_face(&g, face)?;
    let cycle = CycleHandle::new(&g, a.face(fa).walk().to_vec()).ok()?;
    let cycle = orient_exterior(&g, &cycle, face).ok()?;
    let fixture = SurgeryFixture {
        name: format!("split-{len}-{seed}"),
        graph: g,
        face,
        params: SurgeryParams::SplitSeparating { cycle: cycle.vertices().to_vec(), padding },
    };
    let s = fixture.apply().ok()?;
    let inner = &s.parts[1];
    let ok = s.parts.iter().all(|p| p.graph.sigma() < fixture.graph.sigma())
        && in_class(&inner.graph)
        && qualify_face(&inner.graph, inner.face?).is_some();
    ok.then_some(fixture)
}

/// Up to `count` fixtures of one kind, from seeds `base, base + 1, ..`
/// tried at most `budget` times. Deterministic.
pub fn fixtures(kind: SurgeryKind, count: usize, base: u64, budget: usize) -> Vec<SurgeryFixture> {
    fixture_iter(kind, base).take_while(|(seed, _)| *seed < base + budget as u64).filter_map(|(_, f)| f).take(count).collect()
}

/// Attempts for one kind from seed `base` on, with the seed tried.
pub fn fixture_iter(kind: SurgeryKind, base: u64) -> impl Iterator<Item = (u64, Option<SurgeryFixture>)> {
    let make: fn(u64) -> Option<SurgeryFixture> = match kind {
        SurgeryKind::SubdivideEdge => subdivide_fixture,
        SurgeryKind::RemoveAndSubdivide => chord_fixture,
        SurgeryKind::IdentifyDiagonal => diagonal_fixture,
        SurgeryKind::IdentifySixFace => six_face_fixture,
        SurgeryKind::SplitSeparating => split_fixture,
    };
    (base..).map(move |seed| (seed, make(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_kind_has_fixtures() {
        for kind in SurgeryKind::ALL {
            let fx = fixtures(kind, 2, 0, 400);
            assert_eq!(fx.len(), 2, "{kind:?}");
            for f in &fx {
                assert_eq!(f.kind(), kind);
                assert!(f.apply().is_ok(), "{}", f.name);
                assert!(f.graph.vertex_count() <= 22);
            }
        }
    }

    #[test]
    fn strict_identifications_meet_the_degree_bound() {
        for kind in [SurgeryKind::IdentifyDiagonal, SurgeryKind::IdentifySixFace] {
            let fx = strict_fixtures(kind, 2, 0, 200);
            assert_eq!(fx.len(), 2, "{kind:?}");
            for f in &fx {
                let ctx = ProofContext::of(&f.graph, f.face);
                assert!(ctx.strict(), "{}", f.name);
                assert!(in_class(&f.apply().unwrap().parts[0].graph), "{}", f.name);
            }
        }
    }

    #[test]
    fn triangle_free_faces() {
        let g = crate::plane::cycle_graph(4);
        assert!(face_free_of_triangles(&g, FaceId(0)));
    }
}
