//! List edge coloring of outer-1-plane drawings with maximum degree at most
//! four: drawings and crossings, the configuration catalog, the matcher, the
//! coloring engine and gadget verifier, the reduction solver and instance
//! generation.

pub mod catalog;
pub mod coloring;
pub mod drawing;
pub mod factory;
pub mod matcher;
pub mod solver;

pub use catalog::{builtin_catalog, Catalog};
pub use coloring::{check_coloring, EdgeColoring, ListAssignment};
pub use drawing::{Edge, OuterDrawing, Theta};
pub use solver::{color_outer1planar, verify_trace, SolveError, SolverResult};
