use super::construct::{assemble_framework, certificate_from_construction, AuxeticCertificate, DiagramSphere, InitialDiagram};
use crate::analysis::InfDeformation;
use crate::model::{EdgeOrbit, PeriodicFramework, QuotientMultigraph};
use crate::ratmath::{add, int, intvec, rat, ratvec, RatMatrix, RatVec, Rational};
use crate::{Error, Result};

/// Kagome framework (three vertex orbits, six unit edge orbits) with its
/// triangles turned by the parameter `r` away from the maximal-area
/// position, in lattice coordinates:
/// `ω = [[4,2],[2,4]]/(1+3r²)`, `q_1 = ((1−r)/2, r)`, `q_2 = (−r, (1+r)/2)`.
///
/// `r = 0` is the regular configuration of maximal unit-cell area.
pub fn builtin_kagome_twisted(r: &Rational) -> Result<PeriodicFramework> {
    let one = int(1);
    let half = rat(1, 2);
    let s = &one + int(3) * r * r;
    let gram = RatMatrix::from_i64(&[&[4, 2], &[2, 4]]).scale(&(&one / s));
    PeriodicFramework::from_gram(
        gram,
        vec![
            vec![(&one - r) * &half, r.clone()],
            vec![-r.clone(), (&one + r) * &half],
        ],
        vec![
            EdgeOrbit::new(0, 1, &[0, 0]),
            EdgeOrbit::new(0, 2, &[0, 0]),
            EdgeOrbit::new(1, 2, &[0, 0]),
            EdgeOrbit::new(1, 0, &[1, 0]),
            EdgeOrbit::new(2, 0, &[0, 1]),
            EdgeOrbit::new(1, 2, &[1, -1]),
        ],
    )
}

/// Kagome at `r = 1/3`, with its strictly auxetic infinitesimal deformation
/// `q̇_1 = (1/9, −2/9)`, `q̇_2 = (2/9, −1/9)`, `ω̇ = [[1, 1/2], [1/2, 1]]`.
pub fn builtin_kagome() -> (PeriodicFramework, InfDeformation) {
    let fw = builtin_kagome_twisted(&rat(1, 3)).expect("valid fixture");
    let def = InfDeformation {
        qdot: vec![intvec(&[0, 0]), ratvec(&[(1, 9), (-2, 9)]), ratvec(&[(2, 9), (-1, 9)])],
        omegadot: RatMatrix::from_rows(vec![ratvec(&[(1, 1), (1, 2)]), ratvec(&[(1, 2), (1, 1)])]).expect("2x2"),
    };
    assert!(def.satisfies(&fw), "kagome fixture deformation");
    (fw, def)
}

/// Regular Kagome (`r = 0`): maximal unit-cell area, no strict deformation.
pub fn builtin_kagome_regular() -> PeriodicFramework {
    builtin_kagome_twisted(&int(0)).expect("valid fixture")
}

/// Vertices of the regular tetrahedron of the reduced graph, in orbit order.
pub const TETRAHEDRON: [[i64; 3]; 4] = [[-1, -1, -1], [1, 1, -1], [-1, 1, 1], [1, -1, 1]];

/// Tetrahedrally symmetric diagram on the doubled `K_4`: two edge vectors
/// per tetrahedron edge, all transforms of `(α, β, 0)`.
pub fn builtin_tetrahedral_diagram(alpha: &Rational, beta: &Rational) -> Result<InitialDiagram> {
    let one = int(1);
    let a = alpha - &one;
    let b = beta - &one;
    if &a * &a + &b * &b != int(2) {
        return Err(Error::usage(format!("(alpha-1)^2 + (beta-1)^2 must equal 2, got alpha={alpha}, beta={beta}")));
    }
    if alpha == beta {
        return Err(Error::usage("alpha and beta must differ"));
    }
    let (al, be, z) = (alpha.clone(), beta.clone(), int(0));
    let v = |x: &Rational, y: &Rational, w: &Rational| vec![x.clone(), y.clone(), w.clone()];
    let table: [(usize, usize, [RatVec; 2]); 6] = [
        (0, 1, [v(&al, &be, &z), v(&be, &al, &z)]),
        (0, 2, [v(&z, &al, &be), v(&z, &be, &al)]),
        (0, 3, [v(&be, &z, &al), v(&al, &z, &be)]),
        (1, 2, [v(&-al.clone(), &z, &be), v(&-be.clone(), &z, &al)]),
        (1, 3, [v(&z, &-be.clone(), &al), v(&z, &-al.clone(), &be)]),
        (2, 3, [v(&be, &-al.clone(), &z), v(&al, &-be.clone(), &z)]),
    ];
    let placement: Vec<RatVec> = TETRAHEDRON.iter().map(|p| intvec(p)).collect();
    let spheres = table
        .iter()
        .map(|(i, j, vecs)| DiagramSphere {
            lo: *i,
            hi: *j,
            source: *i,
            points: vecs.iter().map(|e| add(&placement[*i], e)).collect(),
            labels: ["A", "B"].iter().map(|s| Some(format!("{}{}{s}", i + 1, j + 1))).collect(),
        })
        .collect();
    Ok(InitialDiagram {
        graph: QuotientMultigraph::complete(4, 2)?,
        placement,
        spheres,
    })
}

/// The tetrahedral framework (`n = 4`, `m = 12`) and its construction
/// certificate. Edge orbits are labeled `12A`, `12B`, ….
pub fn builtin_tetrahedral(alpha: &Rational, beta: &Rational) -> Result<(PeriodicFramework, AuxeticCertificate)> {
    let diag = builtin_tetrahedral_diagram(alpha, beta)?;
    let fw = assemble_framework(&diag)?;
    let cert = certificate_from_construction(&diag, &fw)?;
    Ok((fw, cert))
}

/// Planar diagram on the doubled triangle with the same difference vector
/// `(4, 0)` between the two chosen points of every circle.
pub fn builtin_pseudotriangulation_diagram() -> InitialDiagram {
    let placement = vec![intvec(&[0, 0]), intvec(&[8, 4]), intvec(&[1, 8])];
    let pair = |x: RatVec| {
        let y = add(&x, &intvec(&[4, 0]));
        vec![x, y]
    };
    let sphere = |lo, hi, source, points: Vec<RatVec>| DiagramSphere {
        lo,
        hi,
        source,
        labels: vec![None; points.len()],
        points,
    };
    InitialDiagram {
        graph: QuotientMultigraph::cycle(3, 2).expect("triangle"),
        placement,
        spheres: vec![
            sphere(0, 1, 0, pair(intvec(&[2, 6]))),
            sphere(0, 2, 2, pair(ratvec(&[(-3, 2), (1, 2)]))),
            sphere(1, 2, 1, pair(ratvec(&[(5, 2), (19, 2)]))),
        ],
    }
}

pub fn builtin_pseudotriangulation() -> (PeriodicFramework, AuxeticCertificate) {
    let diag = builtin_pseudotriangulation_diagram();
    let fw = assemble_framework(&diag).expect("valid fixture");
    let cert = certificate_from_construction(&diag, &fw).expect("valid fixture");
    (fw, cert)
}
