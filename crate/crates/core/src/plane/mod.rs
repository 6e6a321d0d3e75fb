//! Plane graphs given by a rotation system.
//!
//! A [`PlaneGraph`] stores, for every vertex, the clockwise cyclic order of
//! its neighbours. Faces are traced once at construction with the rule
//! "leave `v` along the edge immediately counterclockwise of the reversed
//! entering edge", which puts every face on the right-hand side of the darts
//! that trace it. Bounded faces of a drawing are therefore walked clockwise.
//!
//! Graphs are immutable. Every surgery goes through [`RotationSystem`] and
//! comes back through [`RotationSystem::build`], which re-validates symmetry,
//! simplicity and Euler's formula per component.

mod cycle;
mod drawing;
pub mod pg1;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use thiserror::Error;

pub use cycle::CycleHandle;
pub use drawing::{from_straight_line, polygon_points, polygon_with_chords};

/// Index of a face in [`PlaneGraph::faces`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceId(pub usize);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("rotation given for {got} vertices but {expected} labels declared")]
    LengthMismatch { expected: usize, got: usize },
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid vertex label `{0}`")]
    InvalidLabel(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("`{from}` lists `{to}` as a neighbour but `{to}` does not list `{from}`")]
    SymmetryViolation { from: String, to: String },
    #[error("not simple: `{0}` is adjacent to itself")]
    SelfLoop(String),
    #[error("not simple: `{vertex}` lists `{neighbor}` more than once")]
    RepeatedNeighbor { vertex: String, neighbor: String },
    #[error("rotation is not planar: component of `{vertex}` has V - E + F = {characteristic}")]
    NotPlanar { vertex: String, characteristic: i64 },
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),
}

/// Closed walk around one face, in tracing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacialWalk {
    walk: Vec<usize>,
    is_cycle: bool,
}

impl FacialWalk {
    fn new(walk: Vec<usize>) -> Self {
        let mut seen = walk.clone();
        seen.sort_unstable();
        seen.dedup();
        let is_cycle = seen.len() == walk.len() && walk.len() >= 3;
        FacialWalk { walk, is_cycle }
    }

    pub fn walk(&self) -> &[usize] {
        &self.walk
    }

    /// Length of the facial walk, `d(f)`.
    pub fn degree(&self) -> usize {
        self.walk.len()
    }

    pub fn is_cycle(&self) -> bool {
        self.is_cycle
    }

    pub fn contains(&self, v: usize) -> bool {
        self.walk.contains(&v)
    }

    /// Darts `(walk[i], walk[i+1])` in tracing order.
    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let d = self.walk.len();
        (0..d).map(move |i| (self.walk[i], self.walk[(i + 1) % d]))
    }

    /// The boundary as a cycle handle, if the walk is a cycle.
    ///
    /// The face lies on the right of its own walk, so the returned handle has
    /// the face as its interior.
    pub fn as_cycle(&self) -> Option<CycleHandle> {
        self.is_cycle.then(|| CycleHandle::from_vertices_unchecked(self.walk.clone()))
    }
}

/// Mutable rotation system: the only way to derive a new graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub labels: Vec<String>,
    pub rotation: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new() -> Self {
        RotationSystem { labels: Vec::new(), rotation: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn add_vertex(&mut self, label: String) -> usize {
        self.labels.push(label);
        self.rotation.push(Vec::new());
        self.labels.len() - 1
    }

    /// A label not yet used, derived from `base`.
    pub fn fresh_label(&self, base: &str) -> String {
        let taken = |s: &str| self.labels.iter().any(|l| l == s);
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}'{i}"))
            .find(|s| !taken(s))
            .expect("unbounded label space")
    }

    pub fn position(&self, v: usize, neighbor: usize) -> Option<usize> {
        self.rotation[v].iter().position(|&x| x == neighbor)
    }

    pub fn build(self) -> Result<PlaneGraph, GraphError> {
        PlaneGraph::new(self.labels, self.rotation)
    }
}

impl Default for RotationSystem {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    rotation: Vec<Vec<usize>>,
    /// `reverse[u][i]` is the position of `u` in the rotation of `rotation[u][i]`.
    reverse: Vec<Vec<usize>>,
    faces: Vec<FacialWalk>,
    /// `dart_face[u][i]` is the face on the right of the dart `u -> rotation[u][i]`.
    dart_face: Vec<Vec<usize>>,
    edge_count: usize,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.rotation == other.rotation
    }
}

impl Eq for PlaneGraph {}

pub(crate) fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label.starts_with('#')
        && label.chars().all(|c| !c.is_whitespace() && c != ':' && c != ',')
}

impl PlaneGraph {
    /// Validates a rotation system and traces its faces.
    pub fn new(labels: Vec<String>, rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = labels.len();
        if rotation.len() != n {
            return Err(GraphError::LengthMismatch { expected: n, got: rotation.len() });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if !valid_label(label) {
                return Err(GraphError::InvalidLabel(label.clone()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(label.clone()));
            }
        }
        for (u, nbrs) in rotation.iter().enumerate() {
            for (i, &v) in nbrs.iter().enumerate() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange(v));
                }
                if v == u {
                    return Err(GraphError::SelfLoop(labels[u].clone()));
                }
                if nbrs[..i].contains(&v) {
                    return Err(GraphError::RepeatedNeighbor {
                        vertex: labels[u].clone(),
                        neighbor: labels[v].clone(),
                    });
                }
            }
        }
        let mut reverse = Vec::with_capacity(n);
        for (u, nbrs) in rotation.iter().enumerate() {
            let mut rev = Vec::with_capacity(nbrs.len());
            for &v in nbrs {
                match rotation[v].iter().position(|&x| x == u) {
                    Some(j) => rev.push(j),
                    None => {
                        return Err(GraphError::SymmetryViolation {
                            from: labels[u].clone(),
                            to: labels[v].clone(),
                        })
                    }
                }
            }
            reverse.push(rev);
        }
        let edge_count = rotation.iter().map(Vec::len).sum::<usize>() / 2;
        let mut graph = PlaneGraph {
            labels,
            index,
            rotation,
            reverse,
            faces: Vec::new(),
            dart_face: Vec::new(),
            edge_count,
        };
        graph.trace_faces();
        if let Err(e) = graph.check_euler() {
            EULER_FAILURES.fetch_add(1, Ordering::Relaxed);
            return Err(e);
        }
        let face_sum: usize = graph.faces.iter().map(FacialWalk::degree).sum();
        if face_sum != 2 * graph.edge_count {
            FACE_SUM_MISMATCHES.fetch_add(1, Ordering::Relaxed);
        }
        GRAPHS_BUILT.fetch_add(1, Ordering::Relaxed);
        Ok(graph)
    }

    /// Builds from `(label, clockwise neighbour labels)` pairs; vertex indices
    /// follow the order of `entries`.
    pub fn from_labeled<S: AsRef<str>>(entries: &[(S, Vec<S>)]) -> Result<Self, GraphError> {
        let labels: Vec<String> = entries.iter().map(|(l, _)| l.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut rotation = Vec::with_capacity(entries.len());
        for (_, nbrs) in entries {
            let mut row = Vec::with_capacity(nbrs.len());
            for nb in nbrs {
                let nb = nb.as_ref();
                row.push(*index.get(nb).ok_or_else(|| GraphError::UnknownLabel(nb.to_string()))?);
            }
            rotation.push(row);
        }
        PlaneGraph::new(labels, rotation)
    }

    fn trace_faces(&mut self) {
        let n = self.rotation.len();
        let mut dart_face: Vec<Vec<usize>> =
            self.rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut faces = Vec::new();
        for u in 0..n {
            for i in 0..self.rotation[u].len() {
                if dart_face[u][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut x, mut j) = (u, i);
                while dart_face[x][j] == usize::MAX {
                    dart_face[x][j] = id;
                    walk.push(x);
                    (x, j) = self.next_dart(x, j);
                }
                faces.push(FacialWalk::new(walk));
            }
        }
        self.faces = faces;
        self.dart_face = dart_face;
    }

    /// Successor of the dart `(u, rotation[u][i])` on the face to its right.
    fn next_dart(&self, u: usize, i: usize) -> (usize, usize) {
        let v = self.rotation[u][i];
        let j = self.reverse[u][i];
        let d = self.rotation[v].len();
        (v, (j + d - 1) % d)
    }

    fn check_euler(&self) -> Result<(), GraphError> {
        let comp = self.component_ids();
        let count = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut vertices = vec![0i64; count];
        let mut darts = vec![0i64; count];
        let mut faces = vec![0i64; count];
        for v in 0..self.vertex_count() {
            vertices[comp[v]] += 1;
            darts[comp[v]] += self.rotation[v].len() as i64;
        }
        for f in &self.faces {
            faces[comp[f.walk[0]]] += 1;
        }
        for c in 0..count {
            if darts[c] == 0 {
                continue;
            }
            let chi = vertices[c] - darts[c] / 2 + faces[c];
            if chi != 2 {
                let vertex = (0..self.vertex_count()).find(|&v| comp[v] == c).unwrap();
                return Err(GraphError::NotPlanar {
                    vertex: self.labels[vertex].clone(),
                    characteristic: chi,
                });
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `|V| + |E|`, the measure every reduction strictly decreases.
    pub fn sigma(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Clockwise neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.rotation[u].len() <= self.rotation[v].len() { (u, v) } else { (v, u) };
        self.rotation[a].contains(&b)
    }

    /// Every edge once as `(u, v)` with `u < v`, in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rotation
            .iter()
            .enumerate()
            .flat_map(|(u, r)| r.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn faces(&self) -> &[FacialWalk] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &FacialWalk {
        &self.faces[id.0]
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId)
    }

    /// Face on the right of the dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<FaceId> {
        let i = self.rotation[u].iter().position(|&x| x == v)?;
        Some(FaceId(self.dart_face[u][i]))
    }

    /// Neighbour of `v` that follows `after` in clockwise order.
    pub fn next_clockwise(&self, v: usize, after: usize) -> Option<usize> {
        let r = &self.rotation[v];
        let i = r.iter().position(|&x| x == after)?;
        Some(r[(i + 1) % r.len()])
    }

    /// Neighbour of `v` that precedes `before` in clockwise order.
    pub fn prev_clockwise(&self, v: usize, before: usize) -> Option<usize> {
        let r = &self.rotation[v];
        let i = r.iter().position(|&x| x == before)?;
        Some(r[(i + r.len() - 1) % r.len()])
    }

    /// The face whose walk is the cyclic sequence `boundary`, in that orientation.
    pub fn find_face(&self, boundary: &[usize]) -> Option<FaceId> {
        if boundary.len() < 2 {
            return None;
        }
        let start = self.face_of_dart(boundary[0], boundary[1])?;
        let walk = self.face(start).walk();
        let rotated = walk.len() == boundary.len()
            && (0..walk.len()).any(|s| (0..walk.len()).all(|i| walk[(s + i) % walk.len()] == boundary[i]));
        rotated.then_some(start)
    }

    /// Like [`find_face`](Self::find_face) but also accepts the reversed sequence.
    pub fn find_face_either(&self, boundary: &[usize]) -> Option<FaceId> {
        self.find_face(boundary).or_else(|| {
            let rev: Vec<usize> = boundary.iter().rev().copied().collect();
            self.find_face(&rev)
        })
    }

    /// Component index for each vertex, numbered in order of lowest vertex.
    pub fn component_ids(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.rotation[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().iter().all(|&c| c == 0)
    }

    pub fn rotation_system(&self) -> RotationSystem {
        RotationSystem { labels: self.labels.clone(), rotation: self.rotation.clone() }
    }

    /// Sub-embedding on the kept vertices and edges, preserving the cyclic
    /// order of what remains. Returns the graph and old -> new vertex map.
    pub fn restrict(
        &self,
        keep_vertex: &[bool],
        mut keep_edge: impl FnMut(usize, usize) -> bool,
    ) -> (PlaneGraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut labels = Vec::new();
        for v in self.vertices() {
            if keep_vertex[v] {
                map[v] = Some(labels.len());
                labels.push(self.labels[v].clone());
            }
        }
        let mut rotation = Vec::with_capacity(labels.len());
        for u in self.vertices().filter(|&u| keep_vertex[u]) {
            let row = self.rotation[u]
                .iter()
                .filter(|&&v| keep_vertex[v] && keep_edge(u.min(v), u.max(v)))
                .map(|&v| map[v].unwrap())
                .collect();
            rotation.push(row);
        }
        let graph = PlaneGraph::new(labels, rotation)
            .expect("sub-embedding of a plane graph is a plane graph");
        (graph, map)
    }

    /// Deletes the marked vertices.
    pub fn remove_vertices(&self, remove: &[bool]) -> (PlaneGraph, Vec<Option<usize>>) {
        let keep: Vec<bool> = remove.iter().map(|r| !r).collect();
        self.restrict(&keep, |_, _| true)
    }
}

static GRAPHS_BUILT: AtomicU64 = AtomicU64::new(0);
static FACE_SUM_MISMATCHES: AtomicU64 = AtomicU64::new(0);
static EULER_FAILURES: AtomicU64 = AtomicU64::new(0);

/// Process-wide tally of successful [`PlaneGraph::new`] calls, of those whose
/// face degrees did not sum to twice the edge count, and of rotation systems
/// rejected because a component had `V - E + F != 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BuildTally {
    pub built: u64,
    pub face_sum_mismatches: u64,
    pub euler_failures: u64,
}

pub fn build_tally() -> BuildTally {
    BuildTally {
        built: GRAPHS_BUILT.load(Ordering::Relaxed),
        face_sum_mismatches: FACE_SUM_MISMATCHES.load(Ordering::Relaxed),
        euler_failures: EULER_FAILURES.load(Ordering::Relaxed),
    }
}

/// Free-function form of [`PlaneGraph::new`].
pub fn build_plane_graph(labels: Vec<String>, rotation: Vec<Vec<usize>>) -> Result<PlaneGraph, GraphError> {
    PlaneGraph::new(labels, rotation)
}

/// The traced faces of a graph.
pub fn trace_faces(graph: &PlaneGraph) -> &[FacialWalk] {
    graph.faces()
}

/// `|V| + |E|`.
pub fn sigma_measure(graph: &PlaneGraph) -> usize {
    graph.sigma()
}

/// Rotation system of a cycle `0 -> 1 -> ... -> n-1 -> 0` labelled by index.
///
/// The face on the right of `0 -> 1` is traced first and is walked in
/// increasing order.
pub fn cycle_graph(n: usize) -> PlaneGraph {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let rotation = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
    PlaneGraph::new(labels, rotation).expect("cycle graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(entries: &[(&str, &[&str])]) -> Result<PlaneGraph, GraphError> {
        let e: Vec<(&str, Vec<&str>)> = entries.iter().map(|(l, n)| (*l, n.to_vec())).collect();
        PlaneGraph::from_labeled(&e)
    }

    fn euler_ok(g: &PlaneGraph) {
        let total: usize = g.faces().iter().map(FacialWalk::degree).sum();
        assert_eq!(total, 2 * g.edge_count());
        if g.is_connected() && g.edge_count() > 0 {
            assert_eq!(g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64, 2);
        }
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = labeled(&[("a", &["b", "c"]), ("b", &["c", "a"]), ("c", &["a", "b"])]).unwrap();
        assert_eq!(g.face_count(), 2);
        assert!(g.faces().iter().all(|f| f.degree() == 3 && f.is_cycle()));
        assert_eq!(g.sigma(), 6);
        euler_ok(&g);
    }

    #[test]
    fn nine_cycle_faces() {
        let g = cycle_graph(9);
        assert_eq!(g.face_count(), 2);
        assert!(g.faces().iter().all(|f| f.degree() == 9));
        assert_eq!(sigma_measure(&g), 18);
        assert_eq!(g.face(FaceId(0)).walk(), &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn one_sided_adjacency_rejected() {
        let err = labeled(&[("a", &["b"]), ("b", &[])]).unwrap_err();
        assert_eq!(err, GraphError::SymmetryViolation { from: "a".into(), to: "b".into() });
    }

    #[test]
    fn loops_and_repeats_rejected() {
        assert!(matches!(labeled(&[("a", &["a"])]), Err(GraphError::SelfLoop(_))));
        assert!(matches!(
            labeled(&[("a", &["b", "b"]), ("b", &["a"])]),
            Err(GraphError::RepeatedNeighbor { .. })
        ));
    }

    #[test]
    fn empty_graph_has_no_faces() {
        let g = PlaneGraph::new(vec![], vec![]).unwrap();
        assert_eq!(g.face_count(), 0);
        assert_eq!(g.sigma(), 0);
    }

    #[test]
    fn path_face_repeats_middle_vertex() {
        let g = labeled(&[("a", &["b"]), ("b", &["a", "c"]), ("c", &["b"])]).unwrap();
        assert_eq!(g.face_count(), 1);
        let f = &g.faces()[0];
        assert_eq!(f.degree(), 4);
        assert!(!f.is_cycle());
        euler_ok(&g);
    }

    #[test]
    fn eleven_cycle_with_short_chord() {
        // chord 0-2 cuts off vertex 1; faces 3, 10, 11
        let mut sys = cycle_graph(11).rotation_system();
        // inside the face walked 0,1,2,...: at 0 the corner lies after 1 clockwise
        sys.rotation[0] = vec![1, 2, 10];
        sys.rotation[2] = vec![3, 0, 1];
        let g = sys.build().unwrap();
        let mut degrees: Vec<usize> = g.faces().iter().map(FacialWalk::degree).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![3, 10, 11]);
        euler_ok(&g);
    }

    #[test]
    fn non_planar_rotation_rejected() {
        // K4 with a rotation of genus 1
        let r = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
        let labels = (0..4).map(|i| i.to_string()).collect();
        assert!(matches!(PlaneGraph::new(labels, r), Err(GraphError::NotPlanar { .. })));
    }

    #[test]
    fn pendant_inside_four_cycle() {
        // 4-cycle a b c d, e inside attached to a
        let g = labeled(&[
            ("a", &["b", "e", "d"]),
            ("b", &["c", "a"]),
            ("c", &["d", "b"]),
            ("d", &["a", "c"]),
            ("e", &["a"]),
        ])
        .unwrap();
        euler_ok(&g);
        assert_eq!(g.face_count(), 2);
        let mut degrees: Vec<usize> = g.faces().iter().map(FacialWalk::degree).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![4, 6]);
    }

    #[test]
    fn find_face_respects_orientation() {
        let g = cycle_graph(5);
        let f = g.find_face(&[2, 3, 4, 0, 1]).unwrap();
        assert_eq!(f, FaceId(0));
        let other = g.find_face(&[4, 3, 2, 1, 0]).unwrap();
        assert_ne!(other, f);
        assert_eq!(g.find_face(&[0, 2, 1, 3, 4]), None);
    }

    #[test]
    fn restrict_keeps_embedding() {
        let g = cycle_graph(6);
        let (h, map) = g.remove_vertices(&[false, false, true, false, false, false]);
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edge_count(), 4);
        assert_eq!(map[2], None);
        euler_ok(&h);
    }
}
