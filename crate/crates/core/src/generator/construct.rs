use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::InfDeformation;
use crate::model::{EdgeOrbit, PeriodicFramework, QuotientMultigraph, ReducedGraph};
use crate::parallel::{map_indexed, ExecMode};
use crate::ratmath::{
    add, is_integer, is_zero_vec, lattice_span, lll_reduce, rat, scale, sub, zero_vec, RatMatrix, RatVec,
    Rational, RationalSphere,
};
use crate::{Error, Result};

/// Sampling grid and retry budget.
///
/// The defaults place vertices on integer points of `[−4, 4]^d`. Finer
/// placement grids are valid but the lattice index, and with it the edge
/// shifts, grows quickly with the height of the points; in dimension 3 it
/// overflows 64-bit shifts for most multigraphs.
#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Placement coordinates have denominators in `1..=max_denominator`.
    pub max_denominator: i64,
    /// Placement coordinates lie in `[−bound, bound]`.
    pub bound: i64,
    /// Sphere parameters use their own, coarser grid. Every extra
    /// periodicity generator refines the lattice by roughly the height of the
    /// chosen points, so small parameters keep shifts small.
    pub sphere_denominator: i64,
    pub sphere_bound: i64,
    pub retries: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            max_denominator: 1,
            bound: 4,
            sphere_denominator: 1,
            sphere_bound: 2,
            retries: 100,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig {
            seed,
            ..Default::default()
        }
    }
}

/// Chosen points on the sphere of one reduced edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSphere {
    pub lo: usize,
    pub hi: usize,
    /// Vertex the edge vectors emanate from (`lo` or `hi`).
    pub source: usize,
    pub points: Vec<RatVec>,
    pub labels: Vec<Option<String>>,
}

impl DiagramSphere {
    pub fn target(&self) -> usize {
        if self.source == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

/// Reduced placement plus rational points on the diameter spheres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialDiagram {
    pub graph: QuotientMultigraph,
    pub placement: Vec<RatVec>,
    /// One per reduced edge, in reduced-edge order.
    pub spheres: Vec<DiagramSphere>,
}

impl InitialDiagram {
    pub fn dim(&self) -> usize {
        self.placement[0].len()
    }

    /// Sphere of reduced edge `r`: diameter from `p_lo` to `p_hi`.
    pub fn sphere(&self, r: usize) -> Result<RationalSphere> {
        let s = &self.spheres[r];
        RationalSphere::on_diameter(&self.placement[s.lo], &self.placement[s.hi])
    }

    /// Edge vectors of sphere `r`, emanating from its source.
    pub fn edge_vectors(&self, r: usize) -> Vec<RatVec> {
        let s = &self.spheres[r];
        s.points.iter().map(|x| sub(x, &self.placement[s.source])).collect()
    }

    /// Checks the exact invariants: distinct placement, chosen points on
    /// their spheres, distinct from each other and from the diameter ends.
    pub fn check(&self) -> Result<()> {
        let g = self.graph.reduced()?;
        if g.edges().len() != self.spheres.len() {
            return Err(Error::usage("one sphere per reduced edge is required"));
        }
        for (a, p) in self.placement.iter().enumerate() {
            if self.placement[..a].contains(p) {
                return Err(Error::Degenerate(format!("vertex {a} coincides with another vertex")));
            }
        }
        for (r, (s, e)) in self.spheres.iter().zip(g.edges()).enumerate() {
            if (s.lo, s.hi) != (e.lo, e.hi) || (s.source != s.lo && s.source != s.hi) {
                return Err(Error::usage(format!("sphere {r} does not match reduced edge {}-{}", e.lo, e.hi)));
            }
            if s.points.len() != e.multiplicity || s.labels.len() != s.points.len() {
                return Err(Error::usage(format!("sphere {r} needs {} points", e.multiplicity)));
            }
            let sphere = self.sphere(r)?;
            for (k, x) in s.points.iter().enumerate() {
                if !sphere.contains(x) {
                    return Err(Error::usage(format!("point {k} of sphere {r} is off the sphere")));
                }
                if *x == self.placement[s.lo] || *x == self.placement[s.hi] || s.points[..k].contains(x) {
                    return Err(Error::Degenerate(format!("point {k} of sphere {r} is degenerate")));
                }
            }
        }
        Ok(())
    }

    /// Same diagram with vertex `v` renamed to `perm[v]`; sources follow
    /// their vertices so every edge vector keeps its direction.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let graph = self.graph.relabeled(perm)?;
        let mut placement = vec![Vec::new(); self.placement.len()];
        for (v, p) in self.placement.iter().enumerate() {
            placement[perm[v]] = p.clone();
        }
        let g = graph.reduced()?;
        let mut spheres: Vec<Option<DiagramSphere>> = vec![None; self.spheres.len()];
        for s in &self.spheres {
            let (a, b) = (perm[s.lo], perm[s.hi]);
            let r = g.edge_index(a, b).expect("edge survives relabeling");
            spheres[r] = Some(DiagramSphere {
                lo: a.min(b),
                hi: a.max(b),
                source: perm[s.source],
                points: s.points.clone(),
                labels: s.labels.clone(),
            });
        }
        Ok(InitialDiagram {
            graph,
            placement,
            spheres: spheres.into_iter().map(|s| s.expect("every sphere placed")).collect(),
        })
    }
}

/// Strict certificate attached to a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxeticCertificate {
    pub deformation: InfDeformation,
    pub note: String,
}

fn random_rational(rng: &mut ChaCha8Rng, max_denominator: i64, bound: i64) -> Rational {
    let den = rng.random_range(1..=max_denominator.max(1));
    let num = rng.random_range(-bound * den..=bound * den);
    rat(num, den)
}

fn collinear(a: &[Rational], b: &[Rational], c: &[Rational]) -> bool {
    RatMatrix::from_rows(vec![sub(b, a), sub(c, a)]).expect("rows").rank() < 2
}

/// Random rational placement of the reduced graph. Rejects coincident
/// vertices and collinear triples.
pub fn place_reduced_graph(
    g: &QuotientMultigraph,
    d: usize,
    rng: &mut ChaCha8Rng,
    config: &GeneratorConfig,
) -> Result<Vec<RatVec>> {
    if d < 2 {
        return Err(Error::usage("dimension must be at least 2"));
    }
    if g.n() < 2 {
        return Err(Error::usage("graph has no edges to build spheres from"));
    }
    for _ in 0..config.retries.max(1) {
        let pts: Vec<RatVec> = (0..g.n())
            .map(|_| (0..d).map(|_| random_rational(rng, config.max_denominator, config.bound)).collect())
            .collect();
        let n = pts.len();
        let coincident = (0..n).any(|i| (0..i).any(|j| pts[i] == pts[j]));
        let degenerate = coincident
            || (0..n).any(|i| (0..i).any(|j| (0..j).any(|k| collinear(&pts[i], &pts[j], &pts[k]))));
        if !degenerate {
            return Ok(pts);
        }
    }
    Err(Error::Generation(format!(
        "seed {}: no non-degenerate placement within {} retries",
        config.seed, config.retries
    )))
}

/// Picks `m_ij` rational points on each diameter sphere. Edge vectors will
/// emanate from the lower-index vertex.
pub fn choose_sphere_points(
    g: &QuotientMultigraph,
    placement: Vec<RatVec>,
    rng: &mut ChaCha8Rng,
    config: &GeneratorConfig,
) -> Result<InitialDiagram> {
    let reduced = g.reduced()?;
    let d = placement[0].len();
    let mut spheres = Vec::new();
    for e in reduced.edges() {
        let sphere = RationalSphere::on_diameter(&placement[e.lo], &placement[e.hi])?;
        let mut points: Vec<RatVec> = Vec::new();
        let mut attempts = 0;
        while points.len() < e.multiplicity {
            attempts += 1;
            if attempts > config.retries.max(1) * e.multiplicity {
                return Err(Error::Generation(format!(
                    "seed {}: could not choose points on sphere {}-{}",
                    config.seed, e.lo, e.hi
                )));
            }
            let t: RatVec = (0..d - 1)
                .map(|_| random_rational(rng, config.sphere_denominator, config.sphere_bound))
                .collect();
            let x = sphere.point(&t)?;
            if x != placement[e.lo] && x != placement[e.hi] && !points.contains(&x) {
                points.push(x);
            }
        }
        spheres.push(DiagramSphere {
            lo: e.lo,
            hi: e.hi,
            source: e.lo,
            labels: vec![None; points.len()],
            points,
        });
    }
    Ok(InitialDiagram {
        graph: g.clone(),
        placement,
        spheres,
    })
}

/// Signed sum of first representatives around each fundamental cycle,
/// each oriented `lo → hi` and negated on backward steps.
fn cycle_sums(diag: &InitialDiagram, g: &ReducedGraph) -> Vec<RatVec> {
    let oriented_first = |r: usize| {
        let v = diag.edge_vectors(r).swap_remove(0);
        if diag.spheres[r].source == diag.spheres[r].lo {
            v
        } else {
            v.iter().map(|x| -x).collect()
        }
    };
    g.cycles()
        .iter()
        .map(|c| {
            c.steps.iter().fold(zero_vec(diag.dim()), |acc, &(r, fwd)| {
                if fwd {
                    add(&acc, &oriented_first(r))
                } else {
                    sub(&acc, &oriented_first(r))
                }
            })
        })
        .collect()
}

/// Builds the periodic framework of a diagram.
///
/// Periodicity generators: differences of chosen points within each sphere
/// and cycle sums of first representatives. Vertex orbits sit at tree-path
/// sums of first representatives.
pub fn assemble_framework(diag: &InitialDiagram) -> Result<PeriodicFramework> {
    diag.check()?;
    let d = diag.dim();
    let g = diag.graph.reduced()?;
    let mut gens: Vec<RatVec> = Vec::new();
    for s in &diag.spheres {
        for x in &s.points[1..] {
            gens.push(sub(x, &s.points[0]));
        }
    }
    gens.extend(cycle_sums(diag, &g));
    gens.retain(|v| !is_zero_vec(v));
    if gens.is_empty() {
        return Err(Error::Degenerate("no periodicity generators".into()));
    }
    let lattice = lattice_span(&gens)?;
    if !lattice.is_full_rank() {
        return Err(Error::Degenerate(format!(
            "periodicity generators have rank {} < {d}",
            lattice.rank()
        )));
    }
    let basis = lll_reduce(&lattice.basis_matrix(), None)?;
    let binv = basis.inverse().expect("full rank");

    let mut pos = vec![zero_vec(d); g.n()];
    for v in g.bfs_order().into_iter().skip(1) {
        let (p, r) = g.parent(v).expect("non-root");
        let first = diag.edge_vectors(r).swap_remove(0);
        pos[v] = if diag.spheres[r].source == p {
            add(&pos[p], &first)
        } else {
            sub(&pos[p], &first)
        };
    }

    let mut edges = Vec::new();
    for (r, s) in diag.spheres.iter().enumerate() {
        let (from, to) = (s.source, s.target());
        for (e, label) in diag.edge_vectors(r).iter().zip(&s.labels) {
            let shift = binv.mul_vec(&sub(&add(&pos[from], e), &pos[to]));
            if !shift.iter().all(is_integer) {
                return Err(Error::internal("construction produced a non-integral shift"));
            }
            let shift: Vec<i64> = shift
                .iter()
                .map(|x| i64::try_from(x.to_integer()).map_err(|_| Error::Degenerate("shift overflow".into())))
                .collect::<Result<_>>()?;
            let mut orbit = EdgeOrbit::new(from, to, &shift);
            orbit.label = label.clone();
            edges.push(orbit);
        }
    }
    let vertices = pos[1..].iter().map(|p| binv.mul_vec(&sub(p, &pos[0]))).collect();
    PeriodicFramework::from_lattice(basis, vertices, edges)
}

/// `ω̇ = ω`, `q̇_i = −Λ⁻¹(p_i − p_0)/2` with `p` the diagram placement:
/// in the Cartesian frame every ellipsoid is the diameter sphere.
pub fn certificate_from_construction(diag: &InitialDiagram, fw: &PeriodicFramework) -> Result<AuxeticCertificate> {
    let basis = fw
        .lattice()
        .ok_or_else(|| Error::usage("framework has no Cartesian basis"))?;
    let binv = basis.inverse().ok_or_else(|| Error::usage("singular basis"))?;
    if diag.placement.len() != fw.n() {
        return Err(Error::usage("diagram and framework have different vertex counts"));
    }
    let minus_half = rat(-1, 2);
    let qdot = diag
        .placement
        .iter()
        .map(|p| scale(&binv.mul_vec(&sub(p, &diag.placement[0])), &minus_half))
        .collect();
    let deformation = InfDeformation {
        qdot,
        omegadot: fw.gram().clone(),
    };
    if let Some(k) = deformation.residuals(fw).iter().position(|r| !r.is_zero()) {
        return Err(Error::internal(format!("certificate fails the length equation on edge orbit {k}")));
    }
    Ok(AuxeticCertificate {
        deformation,
        note: "diameter-sphere construction: omegadot = gram, qdot_i = -(p_i - p_0)/2 in lattice coordinates".into(),
    })
}

/// A completed generation run.
#[derive(Clone, Debug)]
pub struct Generated {
    pub diagram: InitialDiagram,
    pub framework: PeriodicFramework,
    pub certificate: AuxeticCertificate,
    /// Attempts used, counting the successful one.
    pub attempts: usize,
}

/// Runs the full construction for one seed, retrying degenerate choices.
pub fn generate(g: &QuotientMultigraph, d: usize, config: &GeneratorConfig) -> Result<Generated> {
    // Generators: m_ij − 1 differences per reduced edge plus one sum per
    // fundamental cycle, m − n + 1 in total.
    if g.m() + 1 < g.n() + d {
        return Err(Error::usage(format!(
            "a {d}-dimensional lattice needs m - n + 1 >= {d} periodicity generators, the graph has {}",
            (g.m() + 1).saturating_sub(g.n())
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut last = String::new();
    for attempt in 1..=config.retries.max(1) {
        let placement = place_reduced_graph(g, d, &mut rng, config)?;
        let diagram = choose_sphere_points(g, placement, &mut rng, config)?;
        match assemble_framework(&diagram) {
            Ok(framework) => {
                let certificate = certificate_from_construction(&diagram, &framework)?;
                return Ok(Generated {
                    diagram,
                    framework,
                    certificate,
                    attempts: attempt,
                });
            }
            Err(Error::Degenerate(m)) => last = m,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Generation(format!(
        "seed {}: {} attempts exhausted ({last})",
        config.seed, config.retries
    )))
}

/// [`generate`] for every seed, in seed order.
pub fn generate_batch(
    g: &QuotientMultigraph,
    d: usize,
    seeds: &[u64],
    base: &GeneratorConfig,
    mode: ExecMode,
) -> Vec<Result<Generated>> {
    map_indexed(mode, seeds.len(), |i| {
        generate(
            g,
            d,
            &GeneratorConfig {
                seed: seeds[i],
                ..base.clone()
            },
        )
    })
}
