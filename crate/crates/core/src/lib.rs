//! Periodic bar-and-joint frameworks and their strictly auxetic infinitesimal
//! deformations.
//!
//! Frameworks are stored in lattice coordinates: a Gram matrix `ω` of the
//! periodicity generators, vertex-orbit coordinates `q_i` (with `q_0 = 0`) and
//! edge orbits carrying integer shifts. An infinitesimal deformation
//! `(q̇, ω̇)` is strictly auxetic exactly when `ω̇` is positive definite, which
//! is equivalent to the existence of a diagram of homothetic ellipsoids over
//! the reduced quotient graph.
//!
//! Module map:
//! - [`ratmath`]: exact rationals, matrices, integer lattices, quadric fitting,
//!   rational sphere points, polynomial root isolation.
//! - [`model`]: frameworks, quotient multigraphs, JSON I/O, finite patches.
//! - [`analysis`]: rigidity system, deformation space, strict-auxetic search,
//!   ellipsoid diagrams and reconstruction.
//! - [`generator`]: rational construction of auxetic frameworks from
//!   multigraphs, plus the built-in fixtures.
//! - [`designer`]: two-vertex-orbit designs from conic/quadric pencils.
//! - [`pathfollow`]: numerical continuation of auxetic one-parameter paths.
//! - [`export`]: SVG and OBJ rendering of patches.

pub mod analysis;
pub mod designer;
pub mod error;
pub mod export;
pub mod generator;
pub mod model;
pub mod parallel;
pub mod pathfollow;
pub mod ratmath;

pub use error::{Error, Result};
pub use parallel::ExecMode;
