//! Two-vertex-orbit designs: pencils of conics or quadrics through integer
//! point sets, ellipse selection, apex placement and framework assembly.

mod classify;
mod design;
mod pencil;

pub use classify::{classify_conic, classify_quadric, is_real_ellipsoid, ConicClass, QuadricClass};
pub use design::{
    design_n2, design_planar_n2, design_spatial_n2, search_octuple, search_quadruple, ApexChoice, Design, OctupleHit,
    OctupleSearch,
};
pub use pencil::{ellipse_members, PencilInterval};

use std::fmt;

/// Why a design input was refused. Each precondition has its own variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    WrongCount { expected: usize, got: usize },
    NotIntegral,
    NotStrictlyConvex,
    /// Differences span a proper sublattice of ℤ^d (index given; 0 when
    /// the span is not full rank).
    ProperSublattice { index: String },
    /// The quadrics through the points form a linear space of this
    /// dimension instead of a pencil (dimension 2).
    NotAPencil { dimension: usize },
    /// No member of the pencil is a real ellipse or ellipsoid.
    NoEllipsoid,
    /// The selected member is not a real ellipse or ellipsoid.
    NotEllipsoid { class: String },
    ApexNotOnQuadric,
    ApexCoincident,
    ApexOnBaseLocus,
}

impl Rejection {
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::WrongCount { .. } => "wrong point count",
            Rejection::NotIntegral => "not integral",
            Rejection::NotStrictlyConvex => "not strictly convex",
            Rejection::ProperSublattice { .. } => "proper sublattice",
            Rejection::NotAPencil { .. } => "not a pencil",
            Rejection::NoEllipsoid => "no ellipsoid in pencil",
            Rejection::NotEllipsoid { .. } => "member not an ellipsoid",
            Rejection::ApexNotOnQuadric => "apex not on quadric",
            Rejection::ApexCoincident => "apex coincident",
            Rejection::ApexOnBaseLocus => "apex on base locus",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::WrongCount { expected, got } => write!(f, "expected {expected} points, got {got}"),
            Rejection::NotIntegral => write!(f, "points must have integer coordinates"),
            Rejection::NotStrictlyConvex => write!(f, "points are not in strictly convex position"),
            Rejection::ProperSublattice { index } => {
                write!(f, "differences span a sublattice of index {index}, not the full integer lattice")
            }
            Rejection::NotAPencil { dimension } => {
                write!(f, "quadrics through the points form a family of dimension {dimension}, not a pencil")
            }
            Rejection::NoEllipsoid => write!(f, "the pencil contains no real ellipse or ellipsoid"),
            Rejection::NotEllipsoid { class } => write!(f, "selected member is a {class}"),
            Rejection::ApexNotOnQuadric => write!(f, "apex does not lie on the selected member"),
            Rejection::ApexCoincident => write!(f, "apex coincides with a base point"),
            Rejection::ApexOnBaseLocus => write!(f, "apex lies on the base locus of the pencil"),
        }
    }
}
