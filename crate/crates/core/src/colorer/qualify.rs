use serde::Serialize;

use crate::plane::{FaceId, PlaneGraph};
use crate::structure::is_special_face;

/// Faces whose every proper 3-colouring is claimed to extend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FaceQualification {
    Triangle,
    NineCycle,
    SpecialEleven,
}

pub fn qualify_face(graph: &PlaneGraph, face: FaceId) -> Option<FaceQualification> {
    let walk = graph.face(face);
    if !walk.is_cycle() {
        return None;
    }
    match walk.degree() {
        3 => Some(FaceQualification::Triangle),
        9 => Some(FaceQualification::NineCycle),
        11 if is_special_face(graph, face).is_valid() => Some(FaceQualification::SpecialEleven),
        _ => None,
    }
}

/// Every proper 3-colouring of the cycle `len`, one per colour permutation:
/// the first vertex gets 0 and the first vertex not coloured 0 gets 1.
pub fn boundary_colorings(len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; len];
    fn go(i: usize, cur: &mut Vec<u8>, seen_one: bool, out: &mut Vec<Vec<u8>>) {
        let len = cur.len();
        if i == len {
            if cur[len - 1] != cur[0] {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..3u8 {
            if c == cur[i - 1] || (c == 2 && !seen_one) {
                continue;
            }
            cur[i] = c;
            go(i + 1, cur, seen_one || c == 1, out);
        }
    }
    if len >= 2 {
        go(1, &mut cur, false, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::cycle_graph;

    /// Proper colourings of C_n number 2^n + 2(-1)^n; six permutations each.
    #[test]
    fn boundary_colorings_up_to_permutation() {
        for n in 3..=11usize {
            let total = (1i64 << n) + if n % 2 == 0 { 2 } else { -2 };
            assert_eq!(boundary_colorings(n).len() as i64 * 6, total, "n={n}");
        }
        assert_eq!(boundary_colorings(3), vec![vec![0, 1, 2]]);
        assert_eq!(boundary_colorings(9).len(), 85);
        assert_eq!(boundary_colorings(11).len(), 341);
    }

    #[test]
    fn cycles_qualify_by_length() {
        assert_eq!(qualify_face(&cycle_graph(3), FaceId(0)), Some(FaceQualification::Triangle));
        assert_eq!(qualify_face(&cycle_graph(9), FaceId(1)), Some(FaceQualification::NineCycle));
        assert_eq!(qualify_face(&cycle_graph(10), FaceId(0)), None);
        // a bare 11-cycle has no adjacent triangle
        assert_eq!(qualify_face(&cycle_graph(11), FaceId(0)), None);
    }
}
