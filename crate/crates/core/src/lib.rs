//! Three-colouring plane graphs that have no 5-cycles, no 7-cycles and no
//! two triangles sharing an edge.
//!
//! The crate is organised bottom-up:
//!
//! * [`plane`]: rotation-system plane graphs, face tracing, the `pg1` format.
//! * [`class`]: class membership and short-cycle enumeration.
//! * [`structure`]: separating cycles, chords, ears and collapses,
//!   claw-centers, special faces and special cycles.
//! * [`surgery`]: the reductions, each with a colouring pull-back.
//! * [`colorer`]: precolouring extension, the whole-graph colourer and the
//!   exhaustive oracle.
//! * [`genlab`]: random instances in the class and a curated corpus.
//! * [`audit`]: batch property checks shared by the CLI and the test suite.

pub mod audit;
pub mod class;
pub mod colorer;
pub mod genlab;
pub mod plane;
pub mod structure;
pub mod surgery;

pub use class::{check_class, ClassReport};
pub use colorer::{brute_force_extend, color_graph, extend_coloring, verify_coloring, Coloring};
pub use plane::{CycleHandle, FaceId, FacialWalk, GraphError, PlaneGraph, RotationSystem};
