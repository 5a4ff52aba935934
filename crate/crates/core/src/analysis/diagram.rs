use num_traits::Zero;

use super::deformation::InfDeformation;
use crate::model::{EdgeOrbit, PeriodicFramework, ReducedGraph};
use crate::ratmath::{
    add, is_integer, is_positive_definite_exact, is_zero_vec, lattice_span, lll_reduce, neg, scale, sub,
    zero_vec, QuadricForm, RatMatrix, RatVec, Rational,
};
use crate::{Error, Result};

/// One ellipsoid of the diagram, attached to reduced edge `lo–hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEdge {
    pub lo: usize,
    pub hi: usize,
    /// Center relative to the placement of `lo`.
    pub center: RatVec,
    /// Edge vectors from `lo` to `hi`, in orbit order.
    pub representatives: Vec<RatVec>,
}

/// Homothetic ellipsoids over the reduced quotient graph.
///
/// Coordinates are the lattice coordinates of the source framework with
/// inner product `gram`. Every ellipsoid is `⟨ω̇ x, x⟩ − 2⟨ω̇ c, x⟩ = 0`
/// around its `lo` vertex, so all of them pass through that vertex and
/// share the quadratic part `ω̇`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipsoidDiagram {
    pub gram: RatMatrix,
    pub lattice: Option<RatMatrix>,
    pub quadratic: RatMatrix,
    pub edges: Vec<DiagramEdge>,
    /// Vertex positions with `placement[hi] − placement[lo] = 2·center`.
    pub placement: Vec<RatVec>,
}

impl EllipsoidDiagram {
    pub fn dim(&self) -> usize {
        self.quadratic.rows()
    }

    pub fn n(&self) -> usize {
        self.placement.len()
    }

    /// Ellipsoid of edge `r` in coordinates centered at its `lo` vertex.
    pub fn quadric(&self, r: usize) -> QuadricForm {
        let c = &self.edges[r].center;
        let b = neg(&self.quadratic.mul_vec(c));
        QuadricForm::from_parts(&self.quadratic, &b, &Rational::zero()).expect("nonzero quadratic part")
    }

    /// Ellipsoid of edge `r` in placement coordinates.
    pub fn placed_quadric(&self, r: usize) -> QuadricForm {
        self.quadric(r).translated(&neg(&self.placement[self.edges[r].lo]))
    }

    pub fn reduced_graph(&self) -> Result<ReducedGraph> {
        ReducedGraph::from_pairs(
            self.n(),
            self.edges.iter().map(|e| (e.lo, e.hi, e.representatives.len())),
        )
    }

    /// Signed sum of centers around fundamental cycle `c`.
    pub fn cycle_sum(&self, g: &ReducedGraph, c: usize) -> RatVec {
        g.cycles()[c].steps.iter().fold(zero_vec(self.dim()), |acc, &(k, fwd)| {
            let c = &self.edges[k].center;
            if fwd {
                add(&acc, c)
            } else {
                sub(&acc, c)
            }
        })
    }

    /// Checks the defining invariants exactly.
    pub fn verify(&self) -> Result<()> {
        let bad = |m: String| Err(Error::DiagramInvalid(m));
        if !is_positive_definite_exact(&self.quadratic).unwrap_or(false) {
            return bad("quadratic part is not positive definite".into());
        }
        let g = self.reduced_graph().map_err(|e| Error::DiagramInvalid(e.to_string()))?;
        if g.edges().len() != self.edges.len() {
            return bad("repeated reduced edge".into());
        }
        for (r, e) in self.edges.iter().enumerate() {
            if e.representatives.is_empty() {
                return bad(format!("ellipsoid {r} has no representatives"));
            }
            let q = self.quadric(r);
            if let Some(k) = e.representatives.iter().position(|v| !q.contains(v)) {
                return bad(format!("representative {k} of ellipsoid {}-{} is off the ellipsoid", e.lo, e.hi));
            }
            let gap = sub(&self.placement[e.hi], &self.placement[e.lo]);
            if gap != scale(&e.center, &Rational::from_integer(2.into())) {
                return bad(format!("placement of {}-{} disagrees with its center", e.lo, e.hi));
            }
        }
        for c in 0..g.cycles().len() {
            if !is_zero_vec(&self.cycle_sum(&g, c)) {
                return bad(format!("centers do not sum to zero around cycle {c}"));
            }
        }
        Ok(())
    }
}

/// Builds the diagram of a strictly auxetic deformation:
/// `c_ij = ω̇⁻¹ ω (q̇_i − q̇_j)` and placement `P_i = −2 ω̇⁻¹ ω q̇_i`.
pub fn ellipsoid_diagram(fw: &PeriodicFramework, def: &InfDeformation) -> Result<EllipsoidDiagram> {
    if !def.satisfies(fw) {
        return Err(Error::internal("deformation does not solve the rigidity system"));
    }
    if !def.is_strict() {
        return Err(Error::usage("deformation is not strictly auxetic"));
    }
    let g = fw.reduced_graph()?;
    let winv = def.omegadot.inverse().expect("positive definite");
    let map = winv.mul(fw.gram());
    let reps = fw.reduced_representatives(&g);
    let edges = g
        .edges()
        .iter()
        .zip(reps)
        .map(|(e, reps)| DiagramEdge {
            lo: e.lo,
            hi: e.hi,
            center: map.mul_vec(&sub(&def.qdot[e.lo], &def.qdot[e.hi])),
            representatives: reps.into_iter().map(|(_, v)| v).collect(),
        })
        .collect();
    let m2 = map.scale(&Rational::from_integer((-2).into()));
    let diagram = EllipsoidDiagram {
        gram: fw.gram().clone(),
        lattice: fw.lattice().cloned(),
        quadratic: def.omegadot.clone(),
        edges,
        placement: def.qdot.iter().map(|v| m2.mul_vec(v)).collect(),
    };
    diagram
        .verify()
        .map_err(|e| Error::internal(format!("diagram self-check failed: {e}")))?;
    Ok(diagram)
}

/// Result of rebuilding a framework from its diagram.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub framework: PeriodicFramework,
    pub deformation: InfDeformation,
    /// Columns: the new periodicity basis in the diagram's coordinates.
    pub basis_change: RatMatrix,
}

/// Rebuilds framework and deformation from a diagram.
///
/// Vertices are tree-path sums of first representatives; the periodicity
/// lattice is spanned by representative differences within each ellipsoid
/// and by fundamental-cycle sums. `ω̇` is the shared quadratic part and the
/// velocities solve `ω (q̇_i − q̇_j) = ω̇ c_ij` along the tree.
pub fn reconstruct_from_diagram(diag: &EllipsoidDiagram) -> Result<Reconstruction> {
    diag.verify()?;
    let invalid = |m: &str| Error::DiagramInvalid(m.to_string());
    let d = diag.dim();
    let n = diag.n();
    let g = diag.reduced_graph()?;
    let first = |r: usize| diag.edges[r].representatives[0].clone();

    let mut pos = vec![zero_vec(d); n];
    let mut qdot = vec![zero_vec(d); n];
    let omega_inv = diag.gram.inverse().ok_or_else(|| invalid("gram matrix is singular"))?;
    let step_map = omega_inv.mul(&diag.quadratic);
    for v in g.bfs_order().into_iter().skip(1) {
        let (p, r) = g.parent(v).expect("non-root");
        let e = &diag.edges[r];
        let w = step_map.mul_vec(&e.center);
        if p == e.lo {
            pos[v] = add(&pos[p], &first(r));
            qdot[v] = sub(&qdot[p], &w);
        } else {
            pos[v] = sub(&pos[p], &first(r));
            qdot[v] = add(&qdot[p], &w);
        }
    }
    for e in &diag.edges {
        if sub(&qdot[e.lo], &qdot[e.hi]) != step_map.mul_vec(&e.center) {
            return Err(invalid("center system is incompatible"));
        }
    }

    let mut gens: Vec<RatVec> = Vec::new();
    for e in &diag.edges {
        for v in &e.representatives[1..] {
            gens.push(sub(v, &e.representatives[0]));
        }
    }
    for c in g.cycles() {
        gens.push(c.steps.iter().fold(zero_vec(d), |acc, &(k, fwd)| {
            if fwd {
                add(&acc, &first(k))
            } else {
                sub(&acc, &first(k))
            }
        }));
    }
    gens.retain(|v| !is_zero_vec(v));
    if gens.is_empty() {
        return Err(invalid("no periodicity generators"));
    }
    let lattice = lattice_span(&gens)?;
    if !lattice.is_full_rank() {
        return Err(invalid("periodicity generators have rank < d"));
    }
    let basis = lll_reduce(&lattice.basis_matrix(), Some(&diag.gram))?;
    let binv = basis.inverse().expect("full rank");

    let mut edges = Vec::new();
    for e in &diag.edges {
        for v in &e.representatives {
            let shift = binv.mul_vec(&sub(&add(&pos[e.lo], v), &pos[e.hi]));
            if !shift.iter().all(is_integer) {
                return Err(invalid("edge shift is not integral"));
            }
            let shift: Vec<i64> = shift
                .iter()
                .map(|x| i64::try_from(x.to_integer()).map_err(|_| invalid("shift overflow")))
                .collect::<Result<_>>()?;
            edges.push(EdgeOrbit::new(e.lo, e.hi, &shift));
        }
    }
    let vertices: Vec<RatVec> = pos[1..].iter().map(|p| binv.mul_vec(p)).collect();
    let framework = PeriodicFramework::from_parts_unchecked(
        d,
        diag.lattice.as_ref().map(|l| l.mul(&basis)),
        Some(basis.transpose().mul(&diag.gram).mul(&basis)),
        vertices,
        edges,
    )?;
    let deformation = InfDeformation {
        qdot: qdot.iter().map(|v| binv.mul_vec(v)).collect(),
        omegadot: basis.transpose().mul(&diag.quadratic).mul(&basis),
    };
    if !deformation.satisfies(&framework) {
        return Err(invalid("reconstructed deformation fails the rigidity system"));
    }
    Ok(Reconstruction {
        framework,
        deformation,
        basis_change: basis,
    })
}
