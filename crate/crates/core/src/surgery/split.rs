use super::{subdivide_in_place, ColoringTransfer, PaddingPath, Part, PartMap, Surgery, SurgeryError, SurgeryParams};
use crate::plane::{CycleHandle, PlaneGraph};
use crate::structure::cycle_sides;

/// Splits along a separating cycle whose interior is the right side of the
/// traversal `c0 c1 ..`.
///
/// Part 0 is the graph without the interior. Part 1 is the cycle with its
/// interior and the chords drawn inside it, with `padding` new vertices
/// inserted into `c0 c1`; its designated face is the one the exterior
/// used to occupy.
pub fn split_separating(graph: &PlaneGraph, cycle: &CycleHandle, padding: usize) -> Result<Surgery, SurgeryError> {
    if ![0, 3, 5].contains(&padding) {
        return Err(SurgeryError::InvalidPadding(padding));
    }
    let cycle = CycleHandle::new(graph, cycle.vertices().to_vec())?;
    let sides = cycle_sides(graph, &cycle).map_err(|e| SurgeryError::PreconditionViolated(e.to_string()))?;
    if sides.right.is_empty() || sides.left.is_empty() {
        return Err(SurgeryError::NotSeparating);
    }
    let n = graph.vertex_count();
    let mut inside = vec![false; n];
    for &v in &sides.right {
        inside[v] = true;
    }

    let keep_outer: Vec<bool> = (0..n).map(|v| !inside[v]).collect();
    let (outer, outer_map) = graph.restrict(&keep_outer, |_, _| true);

    let keep_inner: Vec<bool> = (0..n).map(|v| inside[v] || cycle.contains(v)).collect();
    let exterior_chord = |u: usize, v: usize| {
        cycle.contains(u)
            && cycle.contains(v)
            && !cycle.has_edge(u, v)
            && !sides.face_is_right(graph.face_of_dart(u, v).expect("edge"))
    };
    let (closed, inner_map) = graph.restrict(&keep_inner, |u, v| !exterior_chord(u, v));
    let c = cycle.vertices();
    let (c0, c1, c2) = (inner_map[c[0]].unwrap(), inner_map[c[1]].unwrap(), inner_map[c[2]].unwrap());
    let mut sys = closed.rotation_system();
    let mut pads = Vec::new();
    if padding > 0 {
        let path = subdivide_in_place(&mut sys, c0, c1, padding);
        pads.push(PaddingPath { ends: (c0, c1), path });
    }
    let inner = sys.build()?;
    let face = inner.face_of_dart(c2, c1).expect("cycle edge");
    debug_assert_eq!(inner.face(face).degree(), c.len() + padding);

    Ok(Surgery {
        params: SurgeryParams::SplitSeparating { cycle: c.to_vec(), padding },
        parts: vec![Part { graph: outer, face: None }, Part { graph: inner, face: Some(face) }],
        transfer: ColoringTransfer {
            original_len: n,
            parts: vec![
                PartMap { image: outer_map, padding: Vec::new() },
                PartMap { image: inner_map, padding: pads },
            ],
            dropped: Vec::new(),
        },
    })
}
