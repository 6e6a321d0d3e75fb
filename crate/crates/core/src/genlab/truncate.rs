//! Cubic plane graphs grown by edge insertion, and partial truncations of
//! them.
//!
//! Truncating a cubic graph everywhere except on the vertices of one face
//! gives graphs where every vertex has degree 3, the triangles are pairwise
//! disjoint and the kept face borders no triangle. Random growth inside a
//! short cycle almost never produces that combination.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plane::{FaceId, GraphError, PlaneGraph, RotationSystem};

/// The cube, labelled `0..8`.
pub fn cube() -> PlaneGraph {
    // outer square 0 1 2 3 clockwise, inner square 4 5 6 7 inside it
    let rotation = vec![
        vec![1, 4, 3],
        vec![2, 5, 0],
        vec![3, 6, 1],
        vec![0, 7, 2],
        vec![0, 5, 7],
        vec![6, 4, 1],
        vec![2, 7, 5],
        vec![3, 4, 6],
    ];
    PlaneGraph::new((0..8).map(|i| i.to_string()).collect(), rotation).expect("cube")
}

fn replace(row: &mut [usize], old: usize, new: usize) {
    let p = row.iter().position(|&x| x == old).expect("neighbour");
    row[p] = new;
}

/// Subdivides the `i`-th and `j`-th edges of a face and joins the two new
/// vertices across it. Keeps a cubic graph cubic.
pub fn insert_edge(graph: &PlaneGraph, face: FaceId, i: usize, j: usize) -> Result<PlaneGraph, GraphError> {
    let walk = graph.face(face).walk().to_vec();
    let d = walk.len();
    assert!(i != j && i < d && j < d, "two distinct edges of the face");
    let mut sys: RotationSystem = graph.rotation_system();
    let a = sys.add_vertex(sys.vertex_count().to_string());
    let b = sys.add_vertex(sys.vertex_count().to_string());
    for (m, k) in [(a, i), (b, j)] {
        let (x, y) = (walk[k], walk[(k + 1) % d]);
        replace(&mut sys.rotation[x], y, m);
        replace(&mut sys.rotation[y], x, m);
        let other = if m == a { b } else { a };
        // the face lies right of x -> y, so `other` comes just before x
        sys.rotation[m] = vec![x, y, other];
    }
    sys.build()
}

/// A random cubic plane graph with at least `vertex_count` vertices, grown
/// from the cube. No insertion creates a triangle.
pub fn random_cubic(vertex_count: usize, seed: u64) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = cube();
    while g.vertex_count() < vertex_count {
        let faces: Vec<FaceId> = g.face_ids().collect();
        let f = *faces.choose(&mut rng).unwrap();
        let d = g.face(f).degree();
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(2..=d - 2)) % d;
        g = insert_edge(&g, f, i, j).expect("edge insertion keeps the embedding");
    }
    g
}

/// Replaces every vertex not marked in `keep` by a cycle with one vertex per
/// incident edge. The corner of `v` towards `n` is labelled `v>n`.
pub fn truncate(graph: &PlaneGraph, keep: &[bool]) -> PlaneGraph {
    let n = graph.vertex_count();
    let mut start = vec![0; n + 1];
    for v in 0..n {
        start[v + 1] = start[v] + if keep[v] { 1 } else { graph.degree(v) };
    }
    // the vertex of the image standing for `v` at its `i`-th edge
    let at = |v: usize, i: usize| if keep[v] { start[v] } else { start[v] + i };
    let end = |v: usize, towards: usize| {
        let i = graph.neighbors(v).iter().position(|&x| x == towards).unwrap();
        at(v, i)
    };
    let mut labels = Vec::with_capacity(start[n]);
    let mut rotation = Vec::with_capacity(start[n]);
    for (v, &kept) in keep.iter().enumerate().take(n) {
        let nbrs = graph.neighbors(v);
        if kept {
            labels.push(graph.label(v).to_string());
            rotation.push(nbrs.iter().map(|&u| end(u, v)).collect());
            continue;
        }
        let d = nbrs.len();
        for (i, &u) in nbrs.iter().enumerate() {
            labels.push(format!("{}>{}", graph.label(v), graph.label(u)));
            rotation.push(vec![end(u, v), at(v, (i + 1) % d), at(v, (i + d - 1) % d)]);
        }
    }
    PlaneGraph::new(labels, rotation).expect("truncation keeps the embedding")
}

/// Whether every face sharing an edge with `f` has degree at least 5. A
/// 4-face next to the kept face would lift to a 7-cycle.
fn wide_neighbours(h: &PlaneGraph, f: FaceId) -> bool {
    h.face(f).darts().all(|(u, v)| h.face_of_dart(v, u).is_some_and(|g| h.face(g).degree() >= 5))
}

/// A random cubic graph truncated everywhere except on one face of degree
/// `face_len`, with that face's image.
pub fn truncated_around(seed: u64, vertex_count: usize, face_len: usize) -> Option<(PlaneGraph, FaceId)> {
    let h = random_cubic(vertex_count, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let candidates: Vec<FaceId> = h
        .face_ids()
        .filter(|&f| h.face(f).degree() == face_len && h.face(f).is_cycle() && wide_neighbours(&h, f))
        .collect();
    let kept = *candidates.choose(&mut rng)?;
    let mut keep = vec![false; h.vertex_count()];
    for &v in h.face(kept).walk() {
        keep[v] = true;
    }
    let g = truncate(&h, &keep);
    let image: Vec<usize> = h.face(kept).walk().iter().map(|&v| g.index_of(h.label(v)).unwrap()).collect();
    let face = g.find_face_either(&image)?;
    Some((g, face))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::triangles;

    #[test]
    fn cube_faces() {
        let g = cube();
        assert_eq!(g.face_count(), 6);
        assert!(g.faces().iter().all(|f| f.degree() == 4));
    }

    #[test]
    fn insertion_stays_cubic() {
        let g = random_cubic(30, 4);
        assert_eq!(g.vertex_count(), 30);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert_eq!(g.face_count(), 2 + g.edge_count() - g.vertex_count());
    }

    #[test]
    fn full_truncation_of_the_cube() {
        let g = truncate(&cube(), &[false; 8]);
        assert_eq!(g.vertex_count(), 24);
        assert_eq!(triangles(&g).len(), 8);
        let mut degrees: Vec<usize> = g.faces().iter().map(|f| f.degree()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, [vec![3; 8], vec![8; 6]].concat());
    }

    #[test]
    fn kept_face_keeps_its_length() {
        let (g, f) = (0..40).find_map(|s| truncated_around(s, 24, 6)).unwrap();
        assert_eq!(g.face(f).degree(), 6);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }
}
