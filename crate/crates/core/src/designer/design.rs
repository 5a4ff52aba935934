use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classify::{class_label, is_real_ellipsoid};
use super::pencil::{ellipse_members, PencilInterval};
use super::Rejection;
use crate::analysis::{deformation_space, find_strict_auxetic, InfDeformation, SearchConfig, SearchOutcome};
use crate::model::{EdgeOrbit, PeriodicFramework};
use crate::parallel::{find_first, ExecMode};
use crate::ratmath::{
    add, common_denominator, dot, int, is_integer, lattice_span, quadric_space_through, rat, scale, strictly_convex_position, sub,
    zero_vec, QuadricForm, RatMatrix, RatVec, Rational, RationalSphere,
};
use crate::{Error, Result};

/// Resolution used to locate ellipse intervals of a pencil.
fn pencil_resolution() -> Rational {
    rat(1, 1_000_000)
}

/// Where the second vertex orbit goes on the selected ellipse or ellipsoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ApexChoice {
    /// Second intersection of the member with the line through the first
    /// base point whose direction is the unit-sphere point with this
    /// `(d−1)`-dimensional parameter (zero gives `−e_d`, which runs along an
    /// edge of axis-aligned bases, hence the default `1/3`).
    Direction(Vec<Rational>),
    /// An explicit point, which must lie on the member.
    Point(RatVec),
}

impl ApexChoice {
    pub fn default_for(dim: usize) -> Self {
        ApexChoice::Direction(vec![rat(1, 3); dim.saturating_sub(1)])
    }
}

/// A certified two-orbit design.
#[derive(Clone, Debug)]
pub struct Design {
    pub points: Vec<RatVec>,
    /// Basis of the pencil of quadrics through the points.
    pub pencil: [QuadricForm; 2],
    pub parameter: Rational,
    /// `pencil[0] + parameter · pencil[1]`.
    pub member: QuadricForm,
    pub ellipse_intervals: Vec<PencilInterval>,
    pub apex: RatVec,
    pub framework: PeriodicFramework,
    pub deformation_dimension: usize,
    pub certificate: InfDeformation,
}

fn reject<T>(r: Rejection) -> Result<T> {
    Err(Error::Rejected(r))
}

/// Planar design from four integer points.
pub fn design_planar_n2(
    points: &[RatVec],
    parameter: Option<Rational>,
    apex: &ApexChoice,
    config: &SearchConfig,
) -> Result<Design> {
    if points.len() != 4 {
        return reject(Rejection::WrongCount { expected: 4, got: points.len() });
    }
    if points.iter().any(|p| p.len() != 2) {
        return Err(Error::usage("planar design needs points in Z^2"));
    }
    design_n2(points, parameter, apex, config)
}

/// Spatial design from eight integer points.
pub fn design_spatial_n2(
    points: &[RatVec],
    parameter: Option<Rational>,
    apex: &ApexChoice,
    config: &SearchConfig,
) -> Result<Design> {
    if points.len() != 8 {
        return reject(Rejection::WrongCount { expected: 8, got: points.len() });
    }
    if points.iter().any(|p| p.len() != 3) {
        return Err(Error::usage("spatial design needs points in Z^3"));
    }
    design_n2(points, parameter, apex, config)
}

/// Checks the point-set preconditions and returns the pencil basis.
fn admissible_pencil(points: &[RatVec]) -> std::result::Result<[QuadricForm; 2], Rejection> {
    let d = points[0].len();
    if points.iter().flatten().any(|x| !is_integer(x)) {
        return Err(Rejection::NotIntegral);
    }
    if !strictly_convex_position(points) {
        return Err(Rejection::NotStrictlyConvex);
    }
    sublattice_check(points)?;
    pencil_basis(points, d)
}

fn sublattice_check(points: &[RatVec]) -> std::result::Result<(), Rejection> {
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    let span = lattice_span(&diffs).expect("nonempty, same dimension");
    match span.determinant() {
        None => Err(Rejection::ProperSublattice { index: "infinite".into() }),
        Some(det) if det.abs().is_one() => Ok(()),
        Some(det) => Err(Rejection::ProperSublattice { index: det.abs().to_string() }),
    }
}

fn pencil_basis(points: &[RatVec], d: usize) -> std::result::Result<[QuadricForm; 2], Rejection> {
    let space = quadric_space_through(points).expect("points are in dimension 2 or 3");
    if space.len() != 2 {
        return Err(Rejection::NotAPencil { dimension: space.len() });
    }
    let q = |c: &RatVec| QuadricForm::from_coefficients(d, &primitive_integer(c)).expect("nonzero null vector");
    Ok([q(&space[0]), q(&space[1])])
}

/// Positive multiple with coprime integer entries.
fn primitive_integer(v: &[Rational]) -> RatVec {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.into_iter().map(|x| Rational::new(x, g.clone())).collect()
}

/// Runs every precondition in order, places the apex and certifies the
/// resulting framework.
pub fn design_n2(
    points: &[RatVec],
    parameter: Option<Rational>,
    apex: &ApexChoice,
    config: &SearchConfig,
) -> Result<Design> {
    let d = points.first().map_or(0, Vec::len);
    if !(2..=3).contains(&d) || points.iter().any(|p| p.len() != d) {
        return Err(Error::usage("design points must all lie in Z^2 or all in Z^3"));
    }
    let pencil = admissible_pencil(points).map_err(Error::Rejected)?;
    let intervals = ellipse_members(&pencil[0], &pencil[1], &pencil_resolution())?;
    if intervals.is_empty() {
        return reject(Rejection::NoEllipsoid);
    }
    let parameter = parameter.unwrap_or_else(|| intervals[0].sample.clone());
    let member = pencil[0].combine(&parameter, &pencil[1])?;
    if !is_real_ellipsoid(&member)? {
        return reject(Rejection::NotEllipsoid { class: class_label(&member)?.into() });
    }

    let apex = place_apex(&member, &points[0], apex)?;
    if points.contains(&apex) {
        return reject(Rejection::ApexCoincident);
    }
    if pencil[0].contains(&apex) && pencil[1].contains(&apex) {
        return reject(Rejection::ApexOnBaseLocus);
    }

    let framework = two_orbit_framework(points, &apex)?;
    let space = deformation_space(&framework);
    let certificate = match find_strict_auxetic(&space, config) {
        SearchOutcome::Strict(def) => def,
        SearchOutcome::NotFound(nf) => {
            return Err(Error::internal(format!(
                "design passed every check but no strict deformation was certified ({:?})",
                nf.reason
            )))
        }
    };
    Ok(Design {
        points: points.to_vec(),
        pencil,
        parameter,
        member,
        ellipse_intervals: intervals,
        apex,
        deformation_dimension: space.dimension(),
        certificate,
        framework,
    })
}

fn place_apex(member: &QuadricForm, base: &[Rational], choice: &ApexChoice) -> Result<RatVec> {
    match choice {
        ApexChoice::Point(p) => {
            if p.len() != base.len() {
                return Err(Error::usage("apex has the wrong dimension"));
            }
            if !member.contains(p) {
                return reject(Rejection::ApexNotOnQuadric);
            }
            Ok(p.clone())
        }
        ApexChoice::Direction(t) => {
            let unit = RationalSphere::with_rational_radius(zero_vec(base.len()), Rational::one())?;
            let w = unit.point(t)?;
            // Q(P + λw) = λ²⟨Aw,w⟩ + 2λ⟨AP + b, w⟩ with Q(P) = 0; ⟨Aw,w⟩ ≠ 0
            // because A is definite.
            let a = member.quadratic_part();
            let grad = add(&a.mul_vec(base), &member.linear_half());
            let lambda = -(int(2) * dot(&grad, &w)) / a.quadratic_form(&w);
            Ok(add(base, &scale(&w, &lambda)))
        }
    }
}

/// Lattice ℤ^d, orbit 0 at the origin, orbit 1 at the apex, one edge orbit
/// from the apex to each point (shift = the point).
fn two_orbit_framework(points: &[RatVec], apex: &[Rational]) -> Result<PeriodicFramework> {
    let d = apex.len();
    let edges = points
        .iter()
        .map(|p| {
            let shift = p
                .iter()
                .map(|x| x.to_integer().to_i64().ok_or_else(|| Error::usage("point coordinate out of range")))
                .collect::<Result<Vec<i64>>>()?;
            Ok(EdgeOrbit::new(1, 0, &shift))
        })
        .collect::<Result<Vec<_>>>()?;
    PeriodicFramework::from_lattice(RatMatrix::identity(d), vec![apex.to_vec()], edges)
}

/// Seeded randomized search for admissible octuples in `[−bound, bound]³`.
#[derive(Clone, Debug)]
pub struct OctupleSearch {
    pub seed: u64,
    pub trials: usize,
    pub bound: i64,
    pub mode: ExecMode,
}

impl Default for OctupleSearch {
    fn default() -> Self {
        OctupleSearch {
            seed: 0,
            trials: 100_000,
            bound: 5,
            mode: ExecMode::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OctupleHit {
    /// Index of the accepted trial; trial `k` draws from stream `k` of the
    /// seeded generator.
    pub trial: usize,
    pub points: Vec<RatVec>,
    pub intervals: Vec<PencilInterval>,
}

/// Lowest-index trial whose eight distinct points pass every precondition
/// and whose pencil contains an ellipsoid. Independent of `mode`.
pub fn search_octuple(config: &OctupleSearch) -> Option<OctupleHit> {
    search_base(config, 3, 8)
}

/// Planar analogue of [`search_octuple`]: four points in `[−bound, bound]²`.
pub fn search_quadruple(config: &OctupleSearch) -> Option<OctupleHit> {
    search_base(config, 2, 4)
}

fn search_base(config: &OctupleSearch, dim: usize, count: usize) -> Option<OctupleHit> {
    find_first(config.mode, config.trials, |trial| {
        let points = draw_points(config.seed, trial as u64, config.bound, dim, count);
        let pencil = admissible_pencil(&points).ok()?;
        // Existence only needs separated roots, not narrow intervals.
        let coarse = ellipse_members(&pencil[0], &pencil[1], &int(1)).ok()?;
        (!coarse.is_empty()).then_some((points, pencil))
    })
    .map(|(trial, (points, pencil))| OctupleHit {
        trial,
        intervals: ellipse_members(&pencil[0], &pencil[1], &pencil_resolution()).expect("checked above"),
        points,
    })
}

fn draw_points(seed: u64, stream: u64, bound: i64, dim: usize, count: usize) -> Vec<RatVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut points: Vec<RatVec> = Vec::with_capacity(count);
    while points.len() < count {
        let p: RatVec = (0..dim).map(|_| int(rng.random_range(-bound..=bound))).collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    points
}
