use serde::Serialize;

use super::{GraphError, PlaneGraph};

/// A cycle of a plane graph as a cyclic vertex sequence.
///
/// Orientation carries meaning: the interior of the cycle is the side on the
/// right of the traversal, i.e. the sequence runs clockwise around its
/// interior. [`CycleHandle::reversed`] swaps interior and exterior.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleHandle {
    vertices: Vec<usize>,
}

impl CycleHandle {
    pub fn new(graph: &PlaneGraph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        let k = vertices.len();
        if k < 3 {
            return Err(GraphError::NotACycle(format!("length {k} is below 3")));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= graph.vertex_count()) {
            return Err(GraphError::VertexOutOfRange(v));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Err(GraphError::NotACycle("repeated vertex".into()));
        }
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if !graph.has_edge(a, b) {
                return Err(GraphError::NotACycle(format!(
                    "`{}` and `{}` are not adjacent",
                    graph.label(a),
                    graph.label(b)
                )));
            }
        }
        Ok(CycleHandle { vertices })
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<usize>) -> Self {
        CycleHandle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        CycleHandle { vertices: v }
    }

    /// Darts along the traversal.
    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// Whether `{u, v}` is an edge of the cycle.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match (self.position(u), self.position(v)) {
            (Some(i), Some(j)) => {
                let k = self.len();
                (i + 1) % k == j || (j + 1) % k == i
            }
            _ => false,
        }
    }

    /// `C[u, v]`: vertices from `u` to `v` along the traversal, inclusive.
    pub fn segment(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let i = self.position(u)?;
        let j = self.position(v)?;
        let k = self.len();
        let steps = (j + k - i) % k;
        Some((0..=steps).map(|s| self.vertices[(i + s) % k]).collect())
    }

    /// `C(u, v)`: the open segment, endpoints excluded.
    pub fn open_segment(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let seg = self.segment(u, v)?;
        if seg.len() <= 2 {
            return Some(Vec::new());
        }
        Some(seg[1..seg.len() - 1].to_vec())
    }

    /// Unoriented canonical form: start at the least vertex, then step
    /// toward its smaller cycle neighbour.
    pub fn canonical(&self) -> Self {
        let k = self.len();
        let (start, _) = self.vertices.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
        let fwd = self.vertices[(start + 1) % k];
        let back = self.vertices[(start + k - 1) % k];
        let vertices = if fwd <= back {
            (0..k).map(|s| self.vertices[(start + s) % k]).collect()
        } else {
            (0..k).map(|s| self.vertices[(start + k - s) % k]).collect()
        };
        CycleHandle { vertices }
    }

    /// Same cycle with the same orientation, rotated to start at its least vertex.
    pub fn rotated_to_min(&self) -> Self {
        let k = self.len();
        let (start, _) = self.vertices.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
        CycleHandle { vertices: (0..k).map(|s| self.vertices[(start + s) % k]).collect() }
    }

    pub fn labels(&self, graph: &PlaneGraph) -> Vec<String> {
        self.vertices.iter().map(|&v| graph.label(v).to_string()).collect()
    }

    /// Same unoriented cycle (vertex set and cyclic adjacency).
    pub fn same_cycle(&self, other: &CycleHandle) -> bool {
        self.canonical() == other.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::cycle_graph;

    #[test]
    fn validates_adjacency() {
        let g = cycle_graph(6);
        assert!(CycleHandle::new(&g, vec![0, 1, 2, 3, 4, 5]).is_ok());
        assert!(CycleHandle::new(&g, vec![0, 2, 1, 3, 4, 5]).is_err());
        assert!(CycleHandle::new(&g, vec![0, 1]).is_err());
    }

    #[test]
    fn segments_follow_orientation() {
        let c = CycleHandle::from_vertices_unchecked(vec![4, 5, 0, 1, 2, 3]);
        assert_eq!(c.segment(1, 4).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(c.segment(4, 1).unwrap(), vec![4, 5, 0, 1]);
        assert_eq!(c.open_segment(4, 1).unwrap(), vec![5, 0]);
        assert_eq!(c.open_segment(0, 1).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn canonical_form_ignores_rotation_and_reflection() {
        let a = CycleHandle::from_vertices_unchecked(vec![3, 1, 4, 2]);
        let b = CycleHandle::from_vertices_unchecked(vec![2, 4, 1, 3]);
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.canonical().vertices(), &[1, 3, 2, 4]);
        assert!(a.has_edge(2, 3));
        assert!(!a.has_edge(1, 2));
    }
}
