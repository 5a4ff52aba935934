//! Rational construction of periodic frameworks with built-in strictly
//! auxetic deformations, and the built-in fixtures.

mod construct;
mod fixtures;

pub use construct::{
    assemble_framework, certificate_from_construction, choose_sphere_points, generate,
    generate_batch, place_reduced_graph, AuxeticCertificate, DiagramSphere, Generated,
    GeneratorConfig, InitialDiagram,
};
pub use fixtures::{
    builtin_kagome, builtin_kagome_regular, builtin_kagome_twisted, builtin_pseudotriangulation,
    builtin_pseudotriangulation_diagram, builtin_tetrahedral, builtin_tetrahedral_diagram,
    TETRAHEDRON,
};
