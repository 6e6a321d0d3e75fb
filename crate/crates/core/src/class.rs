//! Membership in the class of plane graphs with no 5-cycles, no 7-cycles and
//! no two triangles sharing an edge.

use serde::Serialize;

use crate::plane::{CycleHandle, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub in_class: bool,
    pub five_cycle_witness: Option<CycleHandle>,
    pub seven_cycle_witness: Option<CycleHandle>,
    pub adjacent_triangle_witness: Option<(CycleHandle, CycleHandle)>,
    pub triangle_count: usize,
}

/// Rooted DFS over simple cycles of length `k` whose least vertex is the
/// root. `visit` sees each cycle once, in canonical form, and returns `false`
/// to stop the search.
fn walk_cycles(graph: &PlaneGraph, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k < 3 {
        return;
    }
    let n = graph.vertex_count();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(k);

    fn dfs(
        graph: &PlaneGraph,
        k: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let root = path[0];
        let u = *path.last().unwrap();
        if path.len() == k {
            if path[1] < path[k - 1] && graph.has_edge(u, root) {
                return visit(path);
            }
            return true;
        }
        for &v in graph.neighbors(u) {
            if v > root && !on_path[v] {
                on_path[v] = true;
                path.push(v);
                let go = dfs(graph, k, on_path, path, visit);
                path.pop();
                on_path[v] = false;
                if !go {
                    return false;
                }
            }
        }
        true
    }

    for s in 0..n {
        on_path[s] = true;
        path.push(s);
        let go = dfs(graph, k, &mut on_path, &mut path, &mut visit);
        path.pop();
        on_path[s] = false;
        if !go {
            return;
        }
    }
}

/// All simple cycles of length exactly `k`, each once, in canonical form and
/// lexicographic order.
pub fn cycles_of_length(graph: &PlaneGraph, k: usize) -> Vec<CycleHandle> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    walk_cycles(graph, k, |c| {
        out.push(c.to_vec());
        true
    });
    out.sort();
    out.into_iter().map(CycleHandle::from_vertices_unchecked).collect()
}

/// The lexicographically first cycle of length `k`, if any.
pub fn first_cycle_of_length(graph: &PlaneGraph, k: usize) -> Option<CycleHandle> {
    // the DFS visits roots in increasing order, so the first root with a cycle
    // holds the minimum; finish that root only
    let mut best: Option<Vec<usize>> = None;
    walk_cycles(graph, k, |c| {
        match &best {
            Some(b) if b[0] != c[0] => return false,
            Some(b) if b.as_slice() <= c => {}
            _ => best = Some(c.to_vec()),
        }
        true
    });
    best.map(CycleHandle::from_vertices_unchecked)
}

pub fn has_cycle_of_length(graph: &PlaneGraph, k: usize) -> bool {
    let mut found = false;
    walk_cycles(graph, k, |_| {
        found = true;
        false
    });
    found
}

/// Triangles `[a, b, c]` with `a < b < c`, in lexicographic order.
pub fn triangles(graph: &PlaneGraph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (u, v) in graph.edges() {
        for &w in graph.neighbors(u) {
            if w > v && graph.has_edge(v, w) {
                out.push([u, v, w]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Two distinct triangles sharing an edge, if any.
pub fn adjacent_triangles(graph: &PlaneGraph) -> Option<(CycleHandle, CycleHandle)> {
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    edges.sort_unstable();
    for (u, v) in edges {
        let mut common: Vec<usize> =
            graph.neighbors(u).iter().copied().filter(|&w| graph.has_edge(v, w)).collect();
        if common.len() >= 2 {
            common.sort_unstable();
            let t = |w: usize| CycleHandle::from_vertices_unchecked(vec![u, v, w]).canonical();
            return Some((t(common[0]), t(common[1])));
        }
    }
    None
}

pub fn check_class(graph: &PlaneGraph) -> ClassReport {
    let five_cycle_witness = first_cycle_of_length(graph, 5);
    let seven_cycle_witness = first_cycle_of_length(graph, 7);
    let adjacent_triangle_witness = adjacent_triangles(graph);
    ClassReport {
        in_class: five_cycle_witness.is_none()
            && seven_cycle_witness.is_none()
            && adjacent_triangle_witness.is_none(),
        five_cycle_witness,
        seven_cycle_witness,
        adjacent_triangle_witness,
        triangle_count: triangles(graph).len(),
    }
}

/// Fast membership test with early exit.
pub fn in_class(graph: &PlaneGraph) -> bool {
    adjacent_triangles(graph).is_none() && !has_cycle_of_length(graph, 5) && !has_cycle_of_length(graph, 7)
}

/// Whether the graph has a 4-cycle or a 6-cycle.
pub fn has_four_or_six_cycle(graph: &PlaneGraph) -> bool {
    has_cycle_of_length(graph, 4) || has_cycle_of_length(graph, 6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{cycle_graph, PlaneGraph};

    fn k4() -> PlaneGraph {
        // 3 in the middle of triangle 0 1 2
        PlaneGraph::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        )
        .unwrap()
    }

    /// 11-cycle plus a chord between positions 0 and 3 (2 vertices cut off).
    fn eleven_with_chord_2_7() -> PlaneGraph {
        let mut sys = cycle_graph(11).rotation_system();
        sys.rotation[0] = vec![1, 3, 10];
        sys.rotation[3] = vec![4, 0, 2];
        sys.build().unwrap()
    }

    #[test]
    fn cycle_counts_on_cycles() {
        assert_eq!(cycles_of_length(&cycle_graph(9), 9).len(), 1);
        assert!(cycles_of_length(&cycle_graph(9), 5).is_empty());
    }

    #[test]
    fn chord_splits_into_four_and_nine() {
        let g = eleven_with_chord_2_7();
        for k in [4, 9, 11] {
            assert_eq!(cycles_of_length(&g, k).len(), 1, "k={k}");
        }
        assert!(cycles_of_length(&g, 5).is_empty());
        assert_eq!(cycles_of_length(&g, 4)[0].vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn k4_has_adjacent_triangles() {
        let g = k4();
        assert!(adjacent_triangles(&g).is_some());
        assert_eq!(triangles(&g).len(), 4);
        assert!(!check_class(&g).in_class);
    }

    #[test]
    fn bowtie_triangles_are_not_adjacent() {
        // triangles 0 1 2 and 0 3 4 share only vertex 0
        let g = PlaneGraph::new(
            (0..5).map(|i| i.to_string()).collect(),
            vec![vec![1, 2, 3, 4], vec![2, 0], vec![0, 1], vec![4, 0], vec![0, 3]],
        )
        .unwrap();
        assert!(adjacent_triangles(&g).is_none());
        assert!(check_class(&g).in_class);
        assert_eq!(check_class(&g).triangle_count, 2);
    }

    #[test]
    fn five_cycle_not_in_class() {
        let r = check_class(&cycle_graph(5));
        assert!(!r.in_class);
        assert_eq!(r.five_cycle_witness.unwrap().vertices(), &[0, 1, 2, 3, 4]);
        assert!(r.seven_cycle_witness.is_none());
        assert!(check_class(&cycle_graph(3)).in_class);
        assert!(in_class(&cycle_graph(9)));
    }

    #[test]
    fn nine_cycle_with_ear_triangle() {
        // chord 0-2 inside a 9-cycle: cycles 3 and 8, plus the 9-cycle
        let mut sys = cycle_graph(9).rotation_system();
        sys.rotation[0] = vec![1, 2, 8];
        sys.rotation[2] = vec![3, 0, 1];
        let g = sys.build().unwrap();
        let r = check_class(&g);
        assert!(r.in_class);
        assert_eq!(r.triangle_count, 1);
        let lengths: Vec<usize> = (3..=9).filter(|&k| !cycles_of_length(&g, k).is_empty()).collect();
        assert_eq!(lengths, vec![3, 8, 9]);
    }

    #[test]
    fn first_cycle_is_lexicographic_minimum() {
        let g = eleven_with_chord_2_7();
        for k in 3..=11 {
            assert_eq!(first_cycle_of_length(&g, k), cycles_of_length(&g, k).into_iter().next());
        }
    }
}
