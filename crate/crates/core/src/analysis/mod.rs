//! Infinitesimal rigidity in lattice coordinates, strict-auxetic detection
//! and homothetic ellipsoid diagrams.

mod deformation;
mod diagram;
mod dump;
mod screen;
mod search;

pub use deformation::{
    combine, deformation_space, deformation_space_pinned, lattice_pins, rigidity_system,
    sym_count, sym_index, unknown_count, DeformationSpace, InfDeformation,
};
pub use diagram::{ellipsoid_diagram, reconstruct_from_diagram, DiagramEdge, EllipsoidDiagram, Reconstruction};
pub use dump::{
    deformation_from_json, deformation_to_json, deformation_value, diagram_to_json, diagram_value,
    rigidity_to_json,
};
pub use screen::{necessary_screen, ScreenFailure};
pub use search::{find_strict_auxetic, NotFound, NotFoundReason, SearchConfig, SearchOutcome};

pub(crate) use search::ascend;

use crate::model::{dof_formula, PeriodicFramework};

/// Everything `analyze` reports about a framework.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub rank: usize,
    pub columns: usize,
    pub dof: usize,
    pub dof_formula: i64,
    pub screen: Result<(), ScreenFailure>,
    pub outcome: SearchOutcome,
}

/// Full pipeline: rigidity system, screen, strict-auxetic search. The search
/// is skipped when the screen already proves impossibility.
pub fn analyze(fw: &PeriodicFramework, config: &SearchConfig) -> Analysis {
    let space = deformation_space(fw);
    let screen = necessary_screen(fw);
    let outcome = if screen.is_ok() {
        find_strict_auxetic(&space, config)
    } else {
        SearchOutcome::NotFound(NotFound {
            reason: NotFoundReason::Screened,
            best_lambda_min: f64::NAN,
        })
    };
    Analysis {
        rank: space.rank,
        columns: space.columns,
        dof: space.dimension(),
        dof_formula: dof_formula(fw.dim(), fw.n(), fw.m()),
        screen,
        outcome,
    }
}
