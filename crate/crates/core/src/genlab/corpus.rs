//! Named instances for the configurations the detectors and reductions are
//! built around, each with a recorded expected outcome.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use super::{fixture_iter, generate_instance, glue_faces, GenParams, Grower};
use crate::class::in_class;
use crate::colorer::{boundary_colorings, extend_coloring, qualify_face, verify_coloring, Coloring, ExtensionTask};
use crate::colorer::{FaceQualification, Trace};
use crate::plane::{cycle_graph, pg1, FaceId, PlaneGraph};
use crate::structure::{analyze, FaceAnalysis};
use crate::surgery::SurgeryKind;

#[derive(Debug, Clone)]
pub struct CuratedInstance {
    pub name: &'static str,
    pub graph: PlaneGraph,
    pub face: FaceId,
}

/// Recorded outcome for one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub in_class: bool,
    pub qualifies: Option<FaceQualification>,
    pub analysis: FaceAnalysis,
    /// First step of the extension trace for the first boundary colouring.
    pub first_step: Option<String>,
    /// Whether every boundary colouring (up to permutation) that is proper
    /// in the graph extends.
    pub every_coloring_extends: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub face: Vec<String>,
    pub expected: Expected,
}

fn step_name(trace: &Trace) -> String {
    match trace {
        Trace::Direct { .. } => "direct".into(),
        Trace::FallbackSearch { reason, .. } => {
            format!("fallback-search:{}", serde_json::to_value(reason).unwrap().as_str().unwrap())
        }
        Trace::Reduce { surgery, .. } => surgery.name().into(),
        Trace::Split { .. } => SurgeryKind::SplitSeparating.name().into(),
    }
}

impl Expected {
    pub fn compute(graph: &PlaneGraph, face: FaceId) -> Self {
        let in_class = in_class(graph);
        let qualifies = qualify_face(graph, face);
        let mut first_step = None;
        let mut every = None;
        if in_class && qualifies.is_some() && graph.is_connected() {
            let walk = graph.face(face).walk().to_vec();
            let mut all = true;
            let proper = boundary_colorings(walk.len())
                .into_iter()
                .map(|c| Coloring::on_vertices(graph.vertex_count(), &walk, &c))
                .filter(|c| c.is_proper(graph));
            for (i, boundary) in proper.enumerate() {
                let task = ExtensionTask { graph: graph.clone(), face, boundary: boundary.clone() };
                match extend_coloring(&task) {
                    Ok(ext) => {
                        if i == 0 {
                            first_step = Some(step_name(&ext.trace));
                        }
                        all &= verify_coloring(graph, &ext.coloring) && ext.coloring.extends(&boundary);
                    }
                    Err(_) => all = false,
                }
            }
            every = Some(all);
        }
        Expected { in_class, qualifies, analysis: analyze(graph, face), first_step, every_coloring_extends: every }
    }
}

/// A cycle `0..n` whose face on the right of `1 -> 0` is designated, grown
/// by paths through the other faces.
struct Sketch {
    graph: PlaneGraph,
}

impl Sketch {
    fn cycle(n: usize) -> Self {
        Sketch { graph: cycle_graph(n) }
    }

    fn v(&self, label: &str) -> usize {
        self.graph.index_of(label).unwrap_or_else(|| panic!("no vertex {label}"))
    }

    fn outer(&self) -> FaceId {
        self.graph.face_of_dart(1, 0).unwrap()
    }

    /// A path from `a` to `b` with new vertices `names`, drawn through the
    /// first face other than the designated one that holds both ends.
    fn path(self, a: &str, b: &str, names: &[&str]) -> Self {
        let (a, b) = (self.v(a), self.v(b));
        let outer = self.outer();
        let g = &self.graph;
        let face = g
            .face_ids()
            .find(|&f| f != outer && g.face(f).contains(a) && g.face(f).contains(b))
            .expect("a face holding both ends");
        let walk = g.face(face).walk();
        let i = walk.iter().position(|&x| x == a).unwrap();
        let j = walk.iter().position(|&x| x == b).unwrap();
        let grown = Grower::new(g.clone(), None).with_path(face, i, j, names.len()).expect("path");
        let mut sys = grown.rotation_system();
        let base = g.vertex_count();
        for (k, name) in names.iter().enumerate() {
            sys.labels[base + k] = name.to_string();
        }
        Sketch { graph: sys.build().unwrap() }
    }

    /// A vertex `name` outside the designated face, adjacent to `a` and `b`,
    /// which become the designated triangle.
    fn outside_triangle(self, a: &str, b: &str, name: &str) -> (PlaneGraph, FaceId) {
        let (a, b) = (self.v(a), self.v(b));
        let g = &self.graph;
        let outer = self.outer();
        let walk = g.face(outer).walk();
        let i = walk.iter().position(|&x| x == a).unwrap();
        let j = walk.iter().position(|&x| x == b).unwrap();
        let grown = Grower::new(g.clone(), None).with_path(outer, i, j, 1).expect("path");
        let mut sys = grown.rotation_system();
        let z = g.vertex_count();
        sys.labels[z] = name.to_string();
        let h = sys.build().unwrap();
        let face = h.find_face_either(&[a, z, b]).expect("triangle face");
        (h, face)
    }

    fn done(self, name: &'static str) -> CuratedInstance {
        let face = self.outer();
        CuratedInstance { name, graph: self.graph, face }
    }
}

/// Triangle `0 1 2` with a path of six new vertices from 0 to 1 on each
/// side; the designated face is a 9-face.
fn separating_triangle() -> CuratedInstance {
    let grower = Grower::new(cycle_graph(3), Some((1, 0)));
    let half = grower.with_path(FaceId(0), 0, 1, 6).unwrap();
    let f = half.face_of_dart(1, 0).unwrap();
    let (g, _) = glue_faces(&half, f, &half, f, 0).unwrap();
    let face = g.face_ids().find(|&f| g.face(f).degree() == 9 && g.face(f).is_cycle()).unwrap();
    CuratedInstance { name: "separating_triangle", graph: g, face }
}

fn from_fixture(name: &'static str, kind: SurgeryKind, pick: impl Fn(&super::SurgeryFixture) -> bool) -> CuratedInstance {
    let fx = fixture_iter(kind, 0).take(4_000).filter_map(|(_, f)| f).find(|f| pick(f)).expect("a fixture");
    CuratedInstance { name, graph: fx.graph, face: fx.face }
}

const K4: &str = "pg1 4\n0: 1 3 2\n1: 2 3 0\n2: 0 3 1\n3: 0 1 2\n";

pub fn curated_corpus() -> Vec<CuratedInstance> {
    let k4 = pg1::parse(K4).unwrap();
    let k4_face = k4.face_of_dart(1, 0).unwrap();
    let (lemma4, lemma4_face) = Sketch::cycle(11).path("5", "6", &["t"]).outside_triangle("0", "1", "z");
    vec![
        Sketch::cycle(3).done("triangle"),
        Sketch::cycle(9).done("nine_cycle"),
        Sketch::cycle(11).path("0", "2", &["v"]).done("ear_basic"),
        Sketch::cycle(11).path("0", "2", &["v"]).path("5", "7", &["w"]).done("two_ears"),
        Sketch::cycle(9).path("0", "2", &[]).path("4", "7", &["x", "y"]).done("lemma3_s1"),
        Sketch::cycle(11).path("0", "3", &[]).path("6", "7", &["t"]).done("lemma3_s2"),
        CuratedInstance { name: "lemma4_triangle", graph: lemma4, face: lemma4_face },
        Sketch::cycle(11).path("5", "6", &["t"]).done("special_face_basic"),
        Sketch::cycle(11).path("2", "3", &["t"]).path("1", "5", &["z"]).path("z", "9", &[]).done("claw_center"),
        Sketch::cycle(11)
            .path("0", "2", &["v"])
            .path("v", "3", &["x"])
            .path("x", "0", &["y"])
            .path("y", "4", &[])
            .path("6", "7", &["t"])
            .done("after_ear_dclaw"),
        Sketch::cycle(9).path("0", "2", &["x"]).done("lemma5_path"),
        from_fixture("lemma6_four_face", SurgeryKind::IdentifyDiagonal, |_| true),
        from_fixture("lemma6_six_face", SurgeryKind::IdentifySixFace, |_| true),
        CuratedInstance { name: "k4", graph: k4, face: k4_face },
        Sketch::cycle(5).done("five_cycle"),
        separating_triangle(),
        from_fixture("separating_square", SurgeryKind::SplitSeparating, |f| {
            matches!(&f.params, crate::surgery::SurgeryParams::SplitSeparating { cycle, .. } if cycle.len() == 4)
        }),
    ]
}

/// Generated graphs with at most 14 vertices, each with a designated face:
/// the protected outer face when one was requested, otherwise face 0.
pub fn small_corpus() -> Vec<(String, PlaneGraph, FaceId)> {
    let mut out = Vec::new();
    for seed in 0..60u64 {
        let n = 6 + (seed % 9) as usize;
        let mut p = GenParams::new(n, seed);
        p.outer_face = match seed % 4 {
            0 => Some(3),
            1 if n >= 9 => Some(9),
            2 if n >= 11 => Some(11),
            _ => None,
        };
        if let Ok(g) = generate_instance(&p) {
            let face = g.outer.unwrap_or(FaceId(0));
            out.push((format!("small_{seed:02}"), g.graph, face));
        }
    }
    out
}

fn entry(name: &str, file: String, graph: &PlaneGraph, face: FaceId) -> ManifestEntry {
    ManifestEntry {
        name: name.to_string(),
        file,
        face: graph.face(face).walk().iter().map(|&v| graph.label(v).to_string()).collect(),
        expected: Expected::compute(graph, face),
    }
}

fn pg1_with_face(graph: &PlaneGraph, face: FaceId) -> String {
    let labels: Vec<&str> = graph.face(face).walk().iter().map(|&v| graph.label(v)).collect();
    format!("# face {}\n{}", labels.join(" "), pg1::write(graph))
}

/// The manifest for the curated and small corpora, as written by
/// [`write_corpus`].
pub fn corpus_manifest() -> (Vec<ManifestEntry>, Vec<(String, String)>) {
    let mut entries = Vec::new();
    let mut files = Vec::new();
    for inst in curated_corpus() {
        let file = format!("{}.pg1", inst.name);
        files.push((file.clone(), pg1_with_face(&inst.graph, inst.face)));
        entries.push(entry(inst.name, file, &inst.graph, inst.face));
    }
    for (name, g, face) in small_corpus() {
        let file = format!("small/{name}.pg1");
        files.push((file.clone(), pg1_with_face(&g, face)));
        entries.push(entry(&name, file, &g, face));
    }
    (entries, files)
}

/// Writes every instance as `pg1` plus `manifest.json` under `dir`.
pub fn write_corpus(dir: &Path) -> io::Result<Vec<ManifestEntry>> {
    let (entries, files) = corpus_manifest();
    fs::create_dir_all(dir.join("small"))?;
    for (file, text) in files {
        fs::write(dir.join(file), text)?;
    }
    let json = serde_json::to_string_pretty(&entries).map_err(io::Error::other)?;
    fs::write(dir.join("manifest.json"), json + "\n")?;
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Violation;

    fn get(name: &str) -> CuratedInstance {
        curated_corpus().into_iter().find(|i| i.name == name).unwrap()
    }

    #[test]
    fn ear_counts() {
        let a = analyze(&get("ear_basic").graph, get("ear_basic").face);
        assert_eq!(a.ears.len(), 1);
        assert_eq!(a.ears[0].apex, "v");
        let b = get("two_ears");
        assert_eq!(analyze(&b.graph, b.face).ears.len(), 2);
    }

    #[test]
    fn special_verdicts() {
        let s = get("special_face_basic");
        assert!(analyze(&s.graph, s.face).special_face.unwrap().special);
        let c = get("claw_center");
        let v = analyze(&c.graph, c.face).special_face.unwrap().violation;
        assert_eq!(v, Some(Violation::ClawCenter { collapse: 0, vertex: "z".into() }));
        let d = get("after_ear_dclaw");
        assert!(in_class(&d.graph));
        match analyze(&d.graph, d.face).special_face.unwrap().violation {
            Some(Violation::DClawCenter { collapse, .. }) => assert!(collapse > 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lemma4_has_special_separating_cycle() {
        let l = get("lemma4_triangle");
        assert_eq!(l.graph.face(l.face).degree(), 3);
        let a = analyze(&l.graph, l.face);
        let sep: Vec<_> = a.separating_cycles.iter().filter(|c| c.cycle.len() == 11).collect();
        assert_eq!(sep.len(), 1);
        assert_eq!(sep[0].special, Some(true));
        assert_eq!(sep[0].interior, vec!["t"]);
    }

    #[test]
    fn lemma3_reduction_applies() {
        let l = get("lemma3_s1");
        let e = Expected::compute(&l.graph, l.face);
        assert_eq!(e.first_step.as_deref(), Some("remove-and-subdivide"));
        assert_eq!(e.every_coloring_extends, Some(true));
    }

    #[test]
    fn negative_instances() {
        for name in ["k4", "five_cycle", "claw_center"] {
            assert!(!in_class(&get(name).graph), "{name}");
        }
        let t = get("separating_triangle");
        let a = analyze(&t.graph, t.face);
        assert!(a.separating_cycles.iter().any(|c| c.cycle.len() == 3));
    }
}
