//! Periodic frameworks in lattice coordinates, quotient multigraphs, JSON
//! I/O and finite patches.

mod framework;
mod graph;
mod json;
mod patch;

pub use framework::{EdgeOrbit, PeriodicFramework, ValidationFailure, ValidationReport};
pub use graph::{Cycle, MultiEdge, QuotientMultigraph, ReducedEdge, ReducedGraph};
pub use json::{
    framework_from_json, framework_to_json, framework_value, matrix_value, parse_matrix_value,
    parse_vector_value, rational_value, rows_value, to_pretty_json, vector_value,
};
pub use patch::{patch_expand, FrameworkPatch, PatchBar, PatchVertex};

/// Constraint count `f = dn + C(d, 2) − m`, which is the dimension of the
/// deformation space when the `m` edge constraints are independent.
pub fn dof_formula(d: usize, n: usize, m: usize) -> i64 {
    (d * n + d * d.saturating_sub(1) / 2) as i64 - m as i64
}
