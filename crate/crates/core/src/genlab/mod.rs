//! Random plane graphs in the class and a curated corpus.

mod corpus;
mod fixtures;
mod glue;
mod grow;
mod truncate;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::class::{has_four_or_six_cycle, in_class, triangles};
use crate::plane::{cycle_graph, pg1, FaceId, PlaneGraph};

pub use corpus::{corpus_manifest, curated_corpus, small_corpus, write_corpus, CuratedInstance, Expected, ManifestEntry};
pub use fixtures::{fixture_iter, fixtures, proof_anchor, proof_diagonal, strict_fixtures, ProofContext, SurgeryFixture};
pub use glue::glue_faces;
pub use grow::Grower;
pub use truncate::{cube, insert_edge, random_cubic, truncate, truncated_around};

/// Bumped whenever a change to the generator alters its output for a seed.
pub const GENERATOR_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub target_vertex_count: usize,
    pub seed: u64,
    pub require_triangle: bool,
    pub require_four_or_six_cycle: bool,
    pub max_attempts: usize,
    /// Length of a starting cycle whose outer face is never split. For 11 a
    /// triangle is first grown on one of its edges.
    pub outer_face: Option<usize>,
    /// Keep the graph free of 4-cycles throughout growth.
    pub forbid_four_cycles: bool,
}

impl GenParams {
    pub fn new(target_vertex_count: usize, seed: u64) -> Self {
        GenParams {
            target_vertex_count,
            seed,
            require_triangle: false,
            require_four_or_six_cycle: false,
            max_attempts: 20_000,
            outer_face: None,
            forbid_four_cycles: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("target vertex count must be at least 3")]
    TooSmall,
    #[error("starting cycle length {0} is outside the class or larger than the target")]
    BadOuterFace(usize),
    #[error("exhausted {attempts} attempts ({rejected} moves rejected, {restarts} restarts)")]
    ExhaustedAttempts { attempts: usize, rejected: usize, restarts: usize },
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: PlaneGraph,
    /// The protected face, when `outer_face` was requested.
    pub outer: Option<FaceId>,
    pub attempts: usize,
    pub rejected: usize,
}

impl Generated {
    /// `pg1` text with the generator version and seed recorded as comments.
    pub fn to_pg1(&self, params: &GenParams) -> String {
        let mut out = format!(
            "# generator {GENERATOR_VERSION} seed {} n {}\n",
            params.seed, params.target_vertex_count
        );
        if let Some(f) = self.outer {
            let labels: Vec<&str> = self.graph.face(f).walk().iter().map(|&v| self.graph.label(v)).collect();
            out.push_str(&format!("# face {}\n", labels.join(" ")));
        }
        out.push_str(&pg1::write(&self.graph));
        out
    }
}

fn start(len: usize) -> (PlaneGraph, Option<(usize, usize)>) {
    (cycle_graph(len), Some((1, 0)))
}

pub fn generate(params: &GenParams) -> Result<PlaneGraph, GenError> {
    generate_instance(params).map(|g| g.graph)
}

/// Constrained growth from a short cycle, restarted until the requested
/// flags hold; every move counts against `max_attempts`.
pub fn generate_instance(params: &GenParams) -> Result<Generated, GenError> {
    let n = params.target_vertex_count;
    if n < 3 {
        return Err(GenError::TooSmall);
    }
    if let Some(len) = params.outer_face {
        if !(3..=n).contains(&len) || len == 5 || len == 7 {
            return Err(GenError::BadOuterFace(len));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut attempts = 0;
    let mut rejected = 0;
    let mut restarts = 0;
    while attempts < params.max_attempts {
        let (g0, protected) = match params.outer_face {
            Some(len) => start(len),
            None => {
                let choices = [3, 4, 6, 8, 9];
                (cycle_graph(choices[rng.gen_range(0..choices.len())].min(n.max(3))), None)
            }
        };
        let mut grower = Grower::new(g0, protected);
        grower.forbid_four_cycles = params.forbid_four_cycles;
        if params.outer_face == Some(11) {
            // triangle on the edge 5-6, inside
            let face = grower.graph.face_of_dart(5, 6).unwrap();
            let walk = grower.graph.face(face).walk();
            let i = walk.iter().position(|&v| v == 5).unwrap();
            let j = walk.iter().position(|&v| v == 6).unwrap();
            grower.graph = grower.with_path(face, i, j, 1).expect("triangle on an edge");
        }
        let mut stalled = 0;
        while grower.graph.vertex_count() < n && attempts < params.max_attempts && stalled < 400 {
            attempts += 1;
            let room = n - grower.graph.vertex_count();
            if grower.step(&mut rng, room) {
                stalled = 0;
            } else {
                stalled += 1;
            }
        }
        // chord phase
        let mut chords = n;
        while chords > 0 && attempts < params.max_attempts {
            attempts += 1;
            chords -= 1;
            grower.step(&mut rng, 0);
        }
        rejected += grower.rejected;
        let g = grower.graph.clone();
        let ok = g.vertex_count() == n
            && g.is_connected()
            && in_class(&g)
            && (!params.require_triangle || !triangles(&g).is_empty())
            && (!params.require_four_or_six_cycle || has_four_or_six_cycle(&g));
        if ok {
            let outer = grower.protected_face();
            return Ok(Generated { graph: g, outer, attempts, rejected });
        }
        restarts += 1;
    }
    Err(GenError::ExhaustedAttempts { attempts, rejected, restarts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::check_class;

    #[test]
    fn seeded_runs_repeat() {
        let mut p = GenParams::new(12, 7);
        p.require_triangle = true;
        p.require_four_or_six_cycle = true;
        let a = generate(&p).unwrap();
        let b = generate(&p).unwrap();
        assert_eq!(pg1::write(&a), pg1::write(&b));
        assert!(check_class(&a).in_class);
        assert!(!triangles(&a).is_empty() && has_four_or_six_cycle(&a));
    }

    #[test]
    fn batch_stays_in_class() {
        for seed in 0..100 {
            let g = generate(&GenParams::new(20, seed)).unwrap();
            assert!(check_class(&g).in_class, "seed {seed}");
            assert_eq!(g.vertex_count(), 20);
        }
    }

    #[test]
    fn protected_face_survives() {
        for len in [3, 9, 11] {
            let mut p = GenParams::new(16, 3);
            p.outer_face = Some(len);
            let g = generate_instance(&p).unwrap();
            let f = g.outer.unwrap();
            assert_eq!(g.graph.face(f).degree(), len);
            assert!(g.graph.face(f).is_cycle());
            assert!(g.to_pg1(&p).starts_with("# generator 1 seed 3"));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(generate(&GenParams::new(2, 0)).unwrap_err(), GenError::TooSmall);
        let mut p = GenParams::new(12, 0);
        p.outer_face = Some(7);
        assert_eq!(generate(&p).unwrap_err(), GenError::BadOuterFace(7));
    }
}
