use crate::plane::{FaceId, GraphError, PlaneGraph, RotationSystem};

/// Glues `b` into face `fa` of `a` by identifying the boundary of `fb`,
/// traversed backwards, with the boundary of `fa`: walk position `i` of `fa`
/// meets walk position `offset - i` of `fb`. Both faces disappear.
///
/// Returns the glued graph and the index map for the vertices of `b`; the
/// vertices of `a` keep their indices. Fails if the faces differ in length,
/// are not cycles, or an edge of `b` would duplicate one of `a`.
pub fn glue_faces(
    a: &PlaneGraph,
    fa: FaceId,
    b: &PlaneGraph,
    fb: FaceId,
    offset: usize,
) -> Result<(PlaneGraph, Vec<usize>), GraphError> {
    let wa = a.face(fa).walk();
    let wb = b.face(fb).walk();
    let len = wa.len();
    if wb.len() != len || !a.face(fa).is_cycle() || !b.face(fb).is_cycle() {
        return Err(GraphError::NotACycle("glued faces must be cycles of equal length".into()));
    }
    let mut sys: RotationSystem = a.rotation_system();
    let mut map = vec![usize::MAX; b.vertex_count()];
    for i in 0..len {
        map[wb[(offset + len - i % len) % len]] = wa[i];
    }
    for v in b.vertices() {
        if map[v] == usize::MAX {
            let label = sys.fresh_label(&format!("b.{}", b.label(v)));
            map[v] = sys.add_vertex(label);
        }
    }
    for v in b.vertices().filter(|&v| !b.face(fb).contains(v)) {
        sys.rotation[map[v]] = b.neighbors(v).iter().map(|&u| map[u]).collect();
    }
    let from = |g: &PlaneGraph, v: usize, start: usize| -> Vec<usize> {
        let r = g.neighbors(v);
        let j = r.iter().position(|&x| x == start).expect("face neighbour");
        r[j..].iter().chain(&r[..j]).copied().collect()
    };
    for i in 0..len {
        let (x, y) = (wa[i], wb[(offset + len - i % len) % len]);
        let jb = wb.iter().position(|&v| v == y).unwrap();
        let pb = wb[(jb + len - 1) % len];
        let mut merged = from(a, x, wa[(i + len - 1) % len]);
        let rb = from(b, y, pb);
        for &u in &rb[1..rb.len() - 1] {
            let m = map[u];
            if merged.contains(&m) {
                return Err(GraphError::RepeatedNeighbor {
                    vertex: a.label(x).to_string(),
                    neighbor: sys.labels[m].clone(),
                });
            }
            merged.push(m);
        }
        sys.rotation[x] = merged;
    }
    Ok((sys.build()?, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::in_class;
    use crate::plane::{cycle_graph, CycleHandle};
    use crate::structure::{classify_cycle, Separation};

    #[test]
    fn two_triangles_glue_into_one() {
        let t = cycle_graph(3);
        let (g, _) = glue_faces(&t, FaceId(0), &t, FaceId(1), 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (3, 3, 2));
    }

    #[test]
    fn glued_triangle_separates() {
        // each piece is a triangle with a 7-edge path drawn on one side
        let mut piece = crate::genlab::Grower::new(cycle_graph(3), Some((1, 0)));
        piece.graph = piece.with_path(FaceId(0), 0, 1, 6).unwrap();
        let empty = piece.protected_face().unwrap();
        let (g, map) = glue_faces(&piece.graph, empty, &piece.graph, empty, 0).unwrap();
        assert_eq!(g.vertex_count(), 15);
        assert!(in_class(&g));
        assert!((0..3).all(|v| map[v] < 3));
        let tri = CycleHandle::new(&g, vec![0, 1, 2]).unwrap();
        assert_eq!(classify_cycle(&g, &tri).unwrap().kind, Separation::Separating);
    }
}
