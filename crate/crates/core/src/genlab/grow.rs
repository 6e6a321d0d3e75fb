use rand::Rng;

use crate::class::{has_cycle_of_length, in_class};
use crate::plane::{FaceId, PlaneGraph, RotationSystem};

/// A plane graph under construction by face-splitting paths. The face on
/// the right of `protected` is never split.
#[derive(Debug, Clone)]
pub struct Grower {
    pub graph: PlaneGraph,
    pub protected: Option<(usize, usize)>,
    pub rejected: usize,
    /// Also reject moves that create a 4-cycle.
    pub forbid_four_cycles: bool,
}

impl Grower {
    pub fn new(graph: PlaneGraph, protected: Option<(usize, usize)>) -> Self {
        Grower { graph, protected, rejected: 0, forbid_four_cycles: false }
    }

    pub fn protected_face(&self) -> Option<FaceId> {
        self.protected.and_then(|(a, b)| self.graph.face_of_dart(a, b))
    }

    /// Adds a path with `inner` new vertices across `face`, from the corner at
    /// walk position `i` to the one at `j`. Returns the graph without
    /// checking class membership.
    pub fn with_path(&self, face: FaceId, i: usize, j: usize, inner: usize) -> Option<PlaneGraph> {
        let g = &self.graph;
        let walk = g.face(face).walk();
        let d = walk.len();
        let (a, b) = (walk[i], walk[j]);
        if i == j || (inner == 0 && (a == b || g.has_edge(a, b))) {
            return None;
        }
        let mut sys: RotationSystem = g.rotation_system();
        let mut path = Vec::with_capacity(inner);
        for _ in 0..inner {
            let label = sys.fresh_label(&format!("v{}", sys.vertex_count()));
            path.push(sys.add_vertex(label));
        }
        let first = path.first().copied().unwrap_or(b);
        let last = path.last().copied().unwrap_or(a);
        // insert at the corner: the face lies between `succ` and `pred`
        let corner = |sys: &mut RotationSystem, pos: usize, x: usize| {
            let v = walk[pos];
            let succ = walk[(pos + 1) % d];
            let pred = walk[(pos + d - 1) % d];
            let r = &sys.rotation[v];
            let k = (0..r.len())
                .find(|&k| r[k] == succ && r[(k + 1) % r.len()] == pred)
                .expect("face corner");
            sys.rotation[v].insert(k + 1, x);
        };
        corner(&mut sys, i, first);
        corner(&mut sys, j, last);
        for (k, &p) in path.iter().enumerate() {
            let prev = if k == 0 { a } else { path[k - 1] };
            let next = if k + 1 == inner { b } else { path[k + 1] };
            sys.rotation[p] = vec![prev, next];
        }
        sys.build().ok()
    }

    fn accepts(&self, g: &PlaneGraph) -> bool {
        in_class(g) && !(self.forbid_four_cycles && has_cycle_of_length(g, 4))
    }

    /// Adds chords until every vertex not marked `fixed` has degree at least
    /// 3, trying vertices in index order and partners in face order. Returns
    /// whether it got there.
    pub fn raise_degrees(&mut self, fixed: &[bool]) -> bool {
        'next: while let Some(v) = self.graph.vertices().find(|&v| !fixed[v] && self.graph.degree(v) < 3) {
            let protected = self.protected_face();
            for face in self.graph.face_ids().filter(|&f| Some(f) != protected) {
                let walk = self.graph.face(face).walk();
                let Some(i) = walk.iter().position(|&x| x == v) else { continue };
                for j in 0..walk.len() {
                    if let Some(g) = self.with_path(face, i, j, 0).filter(|g| self.accepts(g)) {
                        self.graph = g;
                        continue 'next;
                    }
                }
            }
            return false;
        }
        true
    }

    /// One random face-splitting move, kept only if the result stays in the
    /// class. `max_inner` bounds the number of new vertices.
    pub fn step<R: Rng>(&mut self, rng: &mut R, max_inner: usize) -> bool {
        let protected = self.protected_face();
        let faces: Vec<FaceId> = self.graph.face_ids().filter(|&f| Some(f) != protected).collect();
        if faces.is_empty() {
            return false;
        }
        let face = faces[rng.gen_range(0..faces.len())];
        let d = self.graph.face(face).degree();
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        let inner = if rng.gen_bool(0.08) { rng.gen_range(0..=7) } else { rng.gen_range(0..=4) }.min(max_inner);
        match self.with_path(face, i, j, inner) {
            Some(g) if self.accepts(&g) => {
                self.graph = g;
                true
            }
            _ => {
                self.rejected += 1;
                false
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::cycle_graph;

    #[test]
    fn chord_across_a_hexagon() {
        let gr = Grower::new(cycle_graph(6), None);
        let g = gr.with_path(FaceId(0), 0, 3, 0).unwrap();
        let mut degrees: Vec<usize> = g.faces().iter().map(|f| f.degree()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![4, 4, 6]);
        assert!(gr.with_path(FaceId(0), 0, 1, 0).is_none());
    }

    #[test]
    fn path_keeps_the_protected_face() {
        let gr = Grower::new(cycle_graph(9), Some((1, 0)));
        let outer = gr.protected_face().unwrap();
        assert_ne!(outer, FaceId(0));
        let g = gr.with_path(FaceId(0), 0, 4, 2).unwrap();
        assert_eq!(g.vertex_count(), 11);
        let f = g.face_of_dart(1, 0).unwrap();
        assert_eq!(g.face(f).degree(), 9);
    }
}
