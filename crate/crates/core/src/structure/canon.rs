use crate::plane::{FaceId, PlaneGraph};

/// Canonical code of a plane graph with a designated face.
///
/// For a root dart on the face, vertices are numbered in BFS order where each
/// vertex scans its rotation clockwise starting from the neighbour that
/// discovered it. The code lists, per vertex, its degree and its numbered
/// rotation. The minimum over all darts of the face is invariant under
/// orientation-preserving isomorphisms that fix the face. Vertices not
/// reachable from the face only contribute their count.
pub fn canonical_code(graph: &PlaneGraph, face: FaceId) -> Vec<u32> {
    let walk = graph.face(face);
    walk.darts().map(|(a, b)| rooted_code(graph, a, b)).min().unwrap_or_default()
}

fn rooted_code(graph: &PlaneGraph, root: usize, first: usize) -> Vec<u32> {
    let n = graph.vertex_count();
    let mut number = vec![u32::MAX; n];
    let mut reference = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    number[root] = 0;
    reference[root] = first;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        let r = graph.neighbors(x);
        let start = r.iter().position(|&y| y == reference[x]).unwrap_or(0);
        for s in 0..r.len() {
            let y = r[(start + s) % r.len()];
            if number[y] == u32::MAX {
                number[y] = order.len() as u32;
                reference[y] = x;
                order.push(y);
            }
        }
    }
    let mut code = Vec::with_capacity(3 * n);
    code.push((n - order.len()) as u32);
    for &x in &order {
        let r = graph.neighbors(x);
        let start = r.iter().position(|&y| y == reference[x]).unwrap_or(0);
        code.push(r.len() as u32);
        code.extend((0..r.len()).map(|s| number[r[(start + s) % r.len()]]));
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{cycle_graph, PlaneGraph};

    #[test]
    fn relabelled_copies_share_a_code() {
        let g = cycle_graph(7);
        // same cycle with vertex indices reversed
        let labels = (0..7).map(|i| format!("x{i}")).collect();
        let rotation = (0..7).map(|i| vec![(i + 6) % 7, (i + 1) % 7]).collect();
        let h = PlaneGraph::new(labels, rotation).unwrap();
        let fg = g.face_ids().next().unwrap();
        let fh = h.find_face(&[6, 5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(canonical_code(&g, fg), canonical_code(&h, fh));
    }

    #[test]
    fn different_graphs_differ() {
        let a = crate::plane::polygon_with_chords(8, &[(0, 3)]).unwrap();
        let b = crate::plane::polygon_with_chords(8, &[(0, 4)]).unwrap();
        let outer_a = a.find_face(&[7, 6, 5, 4, 3, 2, 1, 0]).unwrap();
        let outer_b = b.find_face(&[7, 6, 5, 4, 3, 2, 1, 0]).unwrap();
        assert_ne!(canonical_code(&a, outer_a), canonical_code(&b, outer_b));
    }
}
