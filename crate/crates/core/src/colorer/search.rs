//! Complete backtracking search for 3-colourings with forward checking.

use super::Coloring;
use crate::plane::PlaneGraph;

const ALL: u8 = 0b111;

struct Search<'a> {
    graph: &'a PlaneGraph,
    domain: Vec<u8>,
    assigned: Vec<Option<u8>>,
    trail: Vec<(usize, u8)>,
}

impl Search<'_> {
    /// Removes `color` from the domains of the unassigned neighbours of `v`;
    /// false on a wipe-out.
    fn propagate(&mut self, v: usize, color: u8) -> bool {
        let bit = 1 << color;
        for &u in self.graph.neighbors(v) {
            if self.assigned[u].is_none() && self.domain[u] & bit != 0 {
                self.trail.push((u, self.domain[u]));
                self.domain[u] &= !bit;
                if self.domain[u] == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (u, d) = self.trail.pop().unwrap();
            self.domain[u] = d;
        }
    }

    /// Unassigned vertex with the smallest domain, then most unassigned
    /// neighbours, then lowest index.
    fn choose(&self) -> Option<usize> {
        let mut best: Option<(u32, usize, usize)> = None;
        for v in self.graph.vertices() {
            if self.assigned[v].is_some() {
                continue;
            }
            let size = self.domain[v].count_ones();
            let free = self.graph.neighbors(v).iter().filter(|&&u| self.assigned[u].is_none()).count();
            let better = match best {
                None => true,
                Some((s, f, _)) => size < s || (size == s && free > f),
            };
            if better {
                best = Some((size, free, v));
            }
        }
        best.map(|(_, _, v)| v)
    }

    fn solve(&mut self) -> bool {
        let Some(v) = self.choose() else { return true };
        for color in 0..3u8 {
            if self.domain[v] & (1 << color) == 0 {
                continue;
            }
            let mark = self.trail.len();
            self.assigned[v] = Some(color);
            if self.propagate(v, color) && self.solve() {
                return true;
            }
            self.assigned[v] = None;
            self.undo(mark);
        }
        false
    }
}

/// Some proper total extension of `partial`, or `None` if there is none.
/// An improper `partial` has no extension.
pub fn brute_force_extend(graph: &PlaneGraph, partial: &Coloring) -> Option<Coloring> {
    assert_eq!(partial.len(), graph.vertex_count(), "colouring size mismatch");
    if !partial.is_proper(graph) {
        return None;
    }
    let n = graph.vertex_count();
    let mut search = Search {
        graph,
        domain: vec![ALL; n],
        assigned: partial.as_slice().to_vec(),
        trail: Vec::new(),
    };
    for v in 0..n {
        if let Some(c) = partial.get(v) {
            search.domain[v] = 1 << c;
        }
    }
    for v in 0..n {
        if let Some(c) = partial.get(v) {
            if !search.propagate(v, c) {
                return None;
            }
        }
    }
    search.trail.clear();
    if !search.solve() {
        return None;
    }
    let colors: Vec<u8> = search.assigned.iter().map(|c| c.unwrap()).collect();
    Some(Coloring::from_total(&colors))
}
