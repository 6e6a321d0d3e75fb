use super::{ColoringTransfer, Part, PartMap, Surgery, SurgeryError, SurgeryParams};
use crate::plane::{FaceId, PlaneGraph};

/// Merges the non-adjacent vertices `a` and `b` of a face bounded by a cycle,
/// drawing the merged vertex inside the face. Returns the result and the map
/// from old to new vertices (`a` and `b` share an image).
///
/// With the face walk `.. pa a sa .. pb b sb ..`, the merged rotation is the
/// rotation of `a` read clockwise from `pa` to `sa`, followed by that of `b`
/// from `pb` to `sb`. For a common neighbour the edge from `a` is kept and
/// the one from `b` deleted at both ends.
pub fn identify_across(
    graph: &PlaneGraph,
    face: FaceId,
    a: usize,
    b: usize,
) -> Result<(PlaneGraph, Vec<Option<usize>>), SurgeryError> {
    let walk = graph.face(face);
    if !walk.is_cycle() {
        return Err(SurgeryError::PreconditionViolated("face boundary is not a cycle".into()));
    }
    let w = walk.walk();
    let (Some(ia), Some(ib)) = (w.iter().position(|&x| x == a), w.iter().position(|&x| x == b)) else {
        return Err(SurgeryError::PreconditionViolated("identified vertices must lie on the face".into()));
    };
    if a == b || graph.has_edge(a, b) {
        return Err(SurgeryError::MergeWouldLoop);
    }
    let d = w.len();
    let from = |v: usize, start: usize| -> Vec<usize> {
        let r = graph.neighbors(v);
        let j = r.iter().position(|&x| x == start).expect("face neighbour");
        r[j..].iter().chain(&r[..j]).copied().collect()
    };
    let rot_a = from(a, w[(ia + d - 1) % d]);
    let rot_b = from(b, w[(ib + d - 1) % d]);
    debug_assert_eq!(rot_a.last(), Some(&w[(ia + 1) % d]));

    let mut sys = graph.rotation_system();
    let mut merged = rot_a.clone();
    for &x in &rot_b {
        if rot_a.contains(&x) {
            sys.rotation[x].retain(|&y| y != b);
        } else {
            merged.push(x);
            for y in sys.rotation[x].iter_mut() {
                if *y == b {
                    *y = a;
                }
            }
        }
    }
    sys.rotation[a] = merged;
    sys.rotation[b].clear();
    let label = format!("{}={}", graph.label(a), graph.label(b));
    sys.labels[a] = sys.fresh_label(&label);
    let staged = sys.build()?;
    let mut keep = vec![true; graph.vertex_count()];
    keep[b] = false;
    let (result, mut map) = staged.restrict(&keep, |_, _| true);
    map[b] = map[a];
    Ok((result, map))
}

fn single_part(graph: &PlaneGraph, params: SurgeryParams, result: PlaneGraph, image: Vec<Option<usize>>) -> Surgery {
    Surgery {
        params,
        parts: vec![Part { graph: result, face: None }],
        transfer: ColoringTransfer {
            original_len: graph.vertex_count(),
            parts: vec![PartMap { image, padding: Vec::new() }],
            dropped: Vec::new(),
        },
    }
}

/// Identifies the opposite vertices `u` and `w` of the 4-face `uvwx`.
pub fn identify_diagonal(graph: &PlaneGraph, face: FaceId, diagonal: (usize, usize)) -> Result<Surgery, SurgeryError> {
    let walk = graph.face(face);
    if walk.degree() != 4 || !walk.is_cycle() {
        return Err(SurgeryError::NotAFourFace(walk.degree()));
    }
    let (u, w) = diagonal;
    let b = walk.walk();
    let pos = |x| b.iter().position(|&y| y == x);
    match (pos(u), pos(w)) {
        (Some(i), Some(j)) if (i + 2) % 4 == j => {}
        _ => return Err(SurgeryError::PreconditionViolated("not a diagonal of the face".into())),
    }
    if graph.has_edge(u, w) {
        return Err(SurgeryError::DiagonalAdjacent);
    }
    let (result, map) = identify_across(graph, face, u, w)?;
    Ok(single_part(graph, SurgeryParams::IdentifyDiagonal { face, pair: diagonal }, result, map))
}

/// With the 6-face walked `u0 u1 .. u5` from the anchor `u0`, identifies
/// `u1` with `u5` and then `u2` with `u4`.
pub fn identify_six_face(graph: &PlaneGraph, face: FaceId, anchor: usize) -> Result<Surgery, SurgeryError> {
    let walk = graph.face(face);
    if walk.degree() != 6 || !walk.is_cycle() {
        return Err(SurgeryError::NotASixFace(walk.degree()));
    }
    let w = walk.walk();
    let Some(i0) = w.iter().position(|&x| x == anchor) else {
        return Err(SurgeryError::PreconditionViolated("anchor is not on the face".into()));
    };
    let u: [usize; 6] = std::array::from_fn(|i| w[(i0 + i) % 6]);
    if graph.has_edge(u[1], u[5]) || graph.has_edge(u[2], u[4]) {
        return Err(SurgeryError::MergeWouldLoop);
    }
    let (first, map1) = identify_across(graph, face, u[1], u[5])?;
    let r15 = map1[u[1]].unwrap();
    let (u2, u4) = (map1[u[2]].unwrap(), map1[u[4]].unwrap());
    let quad = first.face_of_dart(r15, u2).expect("merged vertex keeps the edge to u2");
    if !first.face(quad).contains(u4) {
        return Err(SurgeryError::PreconditionViolated("first identification did not leave a 4-face".into()));
    }
    let (result, map2) = identify_across(&first, quad, u2, u4)?;
    let image = map1.iter().map(|x| x.and_then(|x| map2[x])).collect();
    Ok(single_part(graph, SurgeryParams::IdentifySixFace { face, boundary: u }, result, image))
}
