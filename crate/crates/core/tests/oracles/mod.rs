//! Exhaustive reference implementations, written without the library's
//! search code.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use tricolor::plane::{pg1, FaceId, PlaneGraph};

pub fn adjacency(g: &PlaneGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for (v, row) in m.iter_mut().enumerate() {
        for &u in g.neighbors(v) {
            row[u] = true;
        }
    }
    m
}

/// Every simple cycle of length `k` as a canonical sequence, found by
/// taking each `k`-subset of vertices and listing the Hamiltonian cycles of
/// the subgraph it induces.
pub fn cycles_by_subsets(g: &PlaneGraph, k: usize) -> BTreeSet<Vec<usize>> {
    let n = g.vertex_count();
    let adj = adjacency(g);
    let mut out = BTreeSet::new();
    if k < 3 || k > n {
        return out;
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        hamiltonian_cycles(&adj, &subset, &mut out);
        // next combination in lexicographic order
        let mut i = k;
        while i > 0 && subset[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    out
}

fn hamiltonian_cycles(adj: &[Vec<bool>], subset: &[usize], out: &mut BTreeSet<Vec<usize>>) {
    let k = subset.len();
    // permutations of subset[1..] with subset[0] fixed first
    let mut rest: Vec<usize> = subset[1..].to_vec();
    let mut perm = vec![subset[0]];
    fn go(adj: &[Vec<bool>], perm: &mut Vec<usize>, rest: &mut Vec<usize>, k: usize, out: &mut BTreeSet<Vec<usize>>) {
        if perm.len() == k {
            if adj[perm[k - 1]][perm[0]] && perm[1] < perm[k - 1] {
                out.insert(perm.clone());
            }
            return;
        }
        for i in 0..rest.len() {
            let v = rest[i];
            if adj[*perm.last().unwrap()][v] {
                rest.remove(i);
                perm.push(v);
                go(adj, perm, rest, k, out);
                perm.pop();
                rest.insert(i, v);
            }
        }
    }
    go(adj, &mut perm, &mut rest, k, out);
}

/// Vertices on the right and on the left of the traversal `cycle`, found by
/// reading the side of each component of `G - C` from the angle at a cycle
/// vertex it touches.
///
/// With clockwise rotations and faces on the right of their darts, the right
/// side at `c` (entered from `p`, left towards `q`) holds the neighbours met
/// stepping counter-clockwise from `p` until `q`.
pub fn sides_by_wedges(g: &PlaneGraph, cycle: &[usize]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = g.vertex_count();
    let k = cycle.len();
    let mut on = vec![false; n];
    for &c in cycle {
        on[c] = true;
    }
    // side of each (cycle vertex, off-cycle neighbour) pair
    let mut right_of = vec![Vec::new(); n];
    let mut left_of = vec![Vec::new(); n];
    for i in 0..k {
        let (p, c, q) = (cycle[(i + k - 1) % k], cycle[i], cycle[(i + 1) % k]);
        let rot = g.neighbors(c);
        let d = rot.len();
        let start = rot.iter().position(|&x| x == p).unwrap();
        let mut right = true;
        for s in 1..d {
            let x = rot[(start + d - s) % d];
            if x == q {
                right = false;
                continue;
            }
            if !on[x] {
                if right {
                    right_of[c].push(x);
                } else {
                    left_of[c].push(x);
                }
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps = 0;
    for s in 0..n {
        if on[s] || comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = comps;
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if !on[u] && comp[u] == usize::MAX {
                    comp[u] = comps;
                    stack.push(u);
                }
            }
        }
        comps += 1;
    }
    let mut side: Vec<Option<bool>> = vec![None; comps];
    for &c in cycle {
        for (list, r) in [(&right_of[c], true), (&left_of[c], false)] {
            for &x in list {
                let s = &mut side[comp[x]];
                assert!(s.is_none() || *s == Some(r), "component touches both sides");
                *s = Some(r);
            }
        }
    }
    let mut right = BTreeSet::new();
    let mut left = BTreeSet::new();
    for v in 0..n {
        if !on[v] {
            // a component not touching the cycle lies in another component
            // of the graph; count it outside
            if side[comp[v]] == Some(true) {
                right.insert(v);
            } else {
                left.insert(v);
            }
        }
    }
    (right, left)
}

fn face_marks(g: &PlaneGraph, face: FaceId) -> Vec<bool> {
    let mut on = vec![false; g.vertex_count()];
    for &v in g.face(face).walk() {
        on[v] = true;
    }
    on
}

/// Off-face vertices with three or more neighbours on the face, by a scan of
/// the adjacency matrix.
pub fn claw_scan(g: &PlaneGraph, face: FaceId) -> Vec<usize> {
    let on = face_marks(g, face);
    let adj = adjacency(g);
    let n = g.vertex_count();
    (0..n).filter(|&v| !on[v] && (0..n).filter(|&u| on[u] && adj[v][u]).count() >= 3).collect()
}

/// Adjacent off-face pairs with at least four face neighbours between them.
pub fn d_claw_scan(g: &PlaneGraph, face: FaceId) -> Vec<(usize, usize)> {
    let on = face_marks(g, face);
    let adj = adjacency(g);
    let n = g.vertex_count();
    let count = |v: usize| (0..n).filter(|&u| on[u] && adj[v][u]).count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !on[a] && !on[b] && adj[a][b] && count(a) + count(b) >= 4 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Whether some proper 3-colouring agrees with `fixed`, trying every
/// assignment of the free vertices.
pub fn naive_extends(g: &PlaneGraph, fixed: &[Option<u8>]) -> bool {
    let n = g.vertex_count();
    let free: Vec<usize> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut colors: Vec<u8> = fixed.iter().map(|c| c.unwrap_or(0)).collect();
    let total = 3u64.pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &v in &free {
            colors[v] = (c % 3) as u8;
            c /= 3;
        }
        if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
            return true;
        }
    }
    false
}

/// `Σ d(f) = 2|E|` and, when connected, `V - E + F = 2`, from the face list.
pub fn euler_holds(g: &PlaneGraph) -> bool {
    let sum: usize = g.faces().iter().map(|f| f.walk().len()).sum();
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64;
    sum == 2 * g.edge_count() && (!g.is_connected() || g.edge_count() == 0 || chi == 2)
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The stored corpus: every `pg1` file listed in the manifest, with the face
/// from its `# face` line.
pub fn stored_corpus() -> Vec<(String, PlaneGraph, FaceId)> {
    let dir = corpus_dir();
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).expect("manifest")).unwrap();
    manifest
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let file = e["file"].as_str().unwrap();
            let text = std::fs::read_to_string(dir.join(file)).unwrap();
            let g = pg1::parse(&text).unwrap();
            let labels = pg1::face_hint(&text).unwrap();
            let vs: Vec<usize> = labels.iter().map(|l| g.index_of(l).unwrap()).collect();
            let face = g.find_face(&vs).expect("face line names a face");
            (e["name"].as_str().unwrap().to_string(), g, face)
        })
        .collect()
}

/// Disagreements between the library's detectors and the scans above on one
/// graph: cycle lists for every length, both orientations of every cycle,
/// and claw and d-claw centers when the face is bounded by a cycle.
pub fn detector_mismatches(g: &PlaneGraph, face: FaceId) -> Vec<String> {
    use tricolor::class::cycles_of_length;
    use tricolor::structure::{claw_centers, classify_cycle, d_claw_centers};

    let mut bad = Vec::new();
    for k in 3..=g.vertex_count() {
        let lib = cycles_of_length(g, k);
        let found: BTreeSet<Vec<usize>> = lib.iter().map(|c| c.vertices().to_vec()).collect();
        if found.len() != lib.len() || found != cycles_by_subsets(g, k) {
            bad.push(format!("{k}-cycles differ"));
        }
        for c in &lib {
            for h in [c.clone(), c.reversed()] {
                let kind = classify_cycle(g, &h).expect("a cycle");
                let (right, left) = sides_by_wedges(g, h.vertices());
                let separating = !right.is_empty() && !left.is_empty();
                if kind.interior.iter().copied().collect::<BTreeSet<_>>() != right
                    || kind.exterior.iter().copied().collect::<BTreeSet<_>>() != left
                    || kind.is_separating() != separating
                {
                    bad.push(format!("sides of {:?} differ", h.vertices()));
                }
            }
        }
    }
    if g.face(face).is_cycle() {
        if claw_centers(g, face).unwrap() != claw_scan(g, face) {
            bad.push("claw-centers differ".into());
        }
        let mut d = d_claw_centers(g, face).unwrap();
        d.sort_unstable();
        if d != d_claw_scan(g, face) {
            bad.push("d-claw-centers differ".into());
        }
    }
    bad
}
