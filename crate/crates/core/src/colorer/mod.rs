//! 3-colouring and precolouring extension.

mod coloring;
mod extend;
mod qualify;
mod search;
mod trace;

pub use coloring::{parse_col1, verify_coloring, write_col1, Coloring};
pub use extend::{color_graph, extend_coloring, record_candidate, ColorError, Extension, ExtensionTask, InfeasibleInstance};
pub use qualify::{boundary_colorings, qualify_face, FaceQualification};
pub use search::brute_force_extend;
pub use trace::{FallbackReason, Trace};
