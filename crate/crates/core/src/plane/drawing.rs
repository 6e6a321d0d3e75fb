use super::{GraphError, PlaneGraph};

/// Rotation system of a straight-line drawing: neighbours of each vertex are
/// sorted clockwise by angle. Crossing edges yield a rotation that fails the
/// planarity check in [`PlaneGraph::new`].
pub fn from_straight_line(
    labels: Vec<String>,
    points: &[(f64, f64)],
    edges: &[(usize, usize)],
) -> Result<PlaneGraph, GraphError> {
    let n = points.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange(u.max(v)));
        }
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let rotation = nbrs
        .into_iter()
        .enumerate()
        .map(|(u, mut r)| {
            let (x0, y0) = points[u];
            let angle = |v: usize| (points[v].1 - y0).atan2(points[v].0 - x0);
            // clockwise = decreasing angle
            r.sort_by(|&a, &b| angle(b).total_cmp(&angle(a)));
            r
        })
        .collect();
    PlaneGraph::new(labels, rotation)
}

/// Points of a regular `n`-gon placed clockwise, so the face walked
/// `0, 1, 2, ...` is the polygon interior.
pub fn polygon_points(n: usize, radius: f64) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = -2.0 * std::f64::consts::PI * i as f64 / n as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect()
}

/// Cycle `0..n` with straight chords drawn inside the face walked `0, 1, 2, ...`.
/// The rotation at `0` starts at `1`, so the face on the right of `0 -> 1`
/// is `FaceId(0)`.
pub fn polygon_with_chords(n: usize, chords: &[(usize, usize)]) -> Result<PlaneGraph, GraphError> {
    let points = polygon_points(n, 1.0);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend_from_slice(chords);
    let g = from_straight_line((0..n).map(|i| i.to_string()).collect(), &points, &edges)?;
    let mut sys = g.rotation_system();
    if let Some(p) = sys.rotation[0].iter().position(|&v| v == 1) {
        sys.rotation[0].rotate_left(p);
    }
    sys.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::FaceId;

    #[test]
    fn polygon_interior_is_first_face() {
        let g = polygon_with_chords(6, &[]).unwrap();
        assert_eq!(g.face(FaceId(0)).walk(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn crossing_chords_rejected() {
        assert!(matches!(polygon_with_chords(6, &[(0, 3), (1, 4)]), Err(GraphError::NotPlanar { .. })));
        assert!(polygon_with_chords(6, &[(0, 3), (0, 2)]).is_ok());
    }
}
