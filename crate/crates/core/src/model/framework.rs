use nalgebra::DMatrix;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::graph::{QuotientMultigraph, ReducedGraph};
use crate::ratmath::{
    int, is_integer, is_positive_definite_exact, is_zero_vec, sub, to_f64, zero_vec, RatMatrix,
    RatVec, Rational,
};
use crate::{Error, Result};

/// Directed edge orbit `from → to` with integer lattice shift `n_ij`.
///
/// Its edge vector is `q_to + shift − q_from`; the reversed orbit carries the
/// negated shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrbit {
    pub from: usize,
    pub to: usize,
    pub shift: Vec<i64>,
    pub label: Option<String>,
}

impl EdgeOrbit {
    pub fn new(from: usize, to: usize, shift: &[i64]) -> Self {
        EdgeOrbit {
            from,
            to,
            shift: shift.to_vec(),
            label: None,
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }

    pub fn reversed(&self) -> Self {
        EdgeOrbit {
            from: self.to,
            to: self.from,
            shift: self.shift.iter().map(|s| -s).collect(),
            label: self.label.clone(),
        }
    }
}

/// A periodic framework in lattice coordinates.
///
/// `q[0]` is the origin. The Gram matrix is always present; the Cartesian
/// basis `Λ` (columns = periodicity generators) is optional and, when given,
/// satisfies `ω = ΛᵗΛ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicFramework {
    dim: usize,
    lattice: Option<RatMatrix>,
    gram: RatMatrix,
    q: Vec<RatVec>,
    edges: Vec<EdgeOrbit>,
}

/// One failed invariant in a [`ValidationReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationFailure {
    /// Stable short code: `loop edge`, `zero edge`, `Gram not PD`,
    /// `disconnected`, `no edges`.
    pub code: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has(&self, code: &str) -> bool {
        self.failures.iter().any(|f| f.code == code)
    }

    fn push(&mut self, code: &'static str, detail: impl Into<String>) {
        self.failures.push(ValidationFailure {
            code,
            detail: detail.into(),
        });
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .failures
            .iter()
            .map(|x| format!("{}: {}", x.code, x.detail))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl PeriodicFramework {
    /// Validated framework from a Gram matrix. `vertices` lists `q_1, …`.
    pub fn from_gram(gram: RatMatrix, vertices: Vec<RatVec>, edges: Vec<EdgeOrbit>) -> Result<Self> {
        let fw = Self::from_parts_unchecked(gram.rows(), None, Some(gram), vertices, edges)?;
        fw.into_validated()
    }

    /// Validated framework from a Cartesian lattice basis (columns).
    pub fn from_lattice(lattice: RatMatrix, vertices: Vec<RatVec>, edges: Vec<EdgeOrbit>) -> Result<Self> {
        let fw = Self::from_parts_unchecked(lattice.rows(), Some(lattice), None, vertices, edges)?;
        fw.into_validated()
    }

    fn into_validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::Invalid(report.to_string()))
        }
    }

    /// Checks only shapes and index ranges, so frameworks that fail
    /// [`validate`](Self::validate) stay representable.
    pub fn from_parts_unchecked(
        dim: usize,
        lattice: Option<RatMatrix>,
        gram: Option<RatMatrix>,
        vertices: Vec<RatVec>,
        edges: Vec<EdgeOrbit>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("dimension must be positive"));
        }
        let square = |m: &RatMatrix| m.rows() == dim && m.cols() == dim;
        if let Some(l) = &lattice {
            if !square(l) {
                return Err(Error::usage(format!("lattice basis must be {dim}x{dim}")));
            }
        }
        let gram = match (gram, &lattice) {
            (Some(g), Some(l)) => {
                if g != l.transpose().mul(l) {
                    return Err(Error::usage("gram matrix does not match the lattice basis"));
                }
                g
            }
            (Some(g), None) => g,
            (None, Some(l)) => l.transpose().mul(l),
            (None, None) => return Err(Error::usage("need a gram matrix or a lattice basis")),
        };
        if !square(&gram) || !gram.is_symmetric() {
            return Err(Error::usage(format!("gram matrix must be symmetric {dim}x{dim}")));
        }
        if let Some(i) = vertices.iter().position(|v| v.len() != dim) {
            return Err(Error::usage(format!("vertex {} has dimension != {dim}", i + 1)));
        }
        let n = vertices.len() + 1;
        for (k, e) in edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                return Err(Error::usage(format!("edge {k}: endpoint out of range 0..{n}")));
            }
            if e.shift.len() != dim {
                return Err(Error::usage(format!("edge {k}: shift must have {dim} entries")));
            }
        }
        let mut q = vec![zero_vec(dim)];
        q.extend(vertices);
        Ok(PeriodicFramework {
            dim,
            lattice,
            gram,
            q,
            edges,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vertex orbits.
    pub fn n(&self) -> usize {
        self.q.len()
    }

    /// Number of edge orbits.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn lattice(&self) -> Option<&RatMatrix> {
        self.lattice.as_ref()
    }

    /// Lattice coordinates of vertex orbit `i` (`q_0 = 0`).
    pub fn q(&self, i: usize) -> &[Rational] {
        &self.q[i]
    }

    /// `q_1, …, q_{n−1}`.
    pub fn vertices(&self) -> &[RatVec] {
        &self.q[1..]
    }

    pub fn edges(&self) -> &[EdgeOrbit] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &EdgeOrbit {
        &self.edges[k]
    }

    pub fn shift_vec(&self, k: usize) -> RatVec {
        self.edges[k].shift.iter().map(|&s| int(s)).collect()
    }

    /// `e = q_j + n_ij − q_i`.
    pub fn edge_vector(&self, k: usize) -> RatVec {
        let e = &self.edges[k];
        self.q[e.to]
            .iter()
            .zip(&e.shift)
            .zip(&self.q[e.from])
            .map(|((qj, &s), qi)| qj + int(s) - qi)
            .collect()
    }

    /// `⟨ω e, e⟩`.
    pub fn edge_length_sq(&self, k: usize) -> Rational {
        self.gram.quadratic_form(&self.edge_vector(k))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.edges.is_empty() {
            report.push("no edges", "framework has no edge orbits");
        }
        for (k, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                report.push("loop edge", format!("edge {k} joins vertex orbit {} to itself", e.from));
            }
            if is_zero_vec(&self.edge_vector(k)) {
                report.push("zero edge", format!("edge {k} has zero length"));
            }
        }
        if !is_positive_definite_exact(&self.gram).unwrap_or(false) {
            report.push("Gram not PD", "gram matrix is not positive definite");
        }
        let pairs: Vec<(usize, usize, usize)> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.from, e.to, 1))
            .collect();
        if ReducedGraph::from_pairs(self.n(), pairs).is_err() {
            report.push("disconnected", "quotient graph is disconnected");
        }
        report
    }

    /// The quotient multigraph. Fails on loops and disconnection.
    pub fn quotient(&self) -> Result<QuotientMultigraph> {
        let mut triples: Vec<(usize, usize, usize)> = Vec::new();
        for e in &self.edges {
            let (lo, hi) = (e.from.min(e.to), e.from.max(e.to));
            match triples.iter_mut().find(|t| t.0 == lo && t.1 == hi) {
                Some(t) => t.2 += 1,
                None => triples.push((lo, hi, 1)),
            }
        }
        QuotientMultigraph::from_triples(self.n(), &triples)
    }

    pub fn reduced_graph(&self) -> Result<ReducedGraph> {
        self.quotient()?.reduced()
    }

    /// For every reduced edge `lo–hi`: the orbits joining them and their edge
    /// vectors oriented from `lo` to `hi`, in orbit order.
    pub fn reduced_representatives(&self, g: &ReducedGraph) -> Vec<Vec<(usize, RatVec)>> {
        let mut reps = vec![Vec::new(); g.edges().len()];
        for (k, e) in self.edges.iter().enumerate() {
            if let Some(r) = g.edge_index(e.from, e.to) {
                let v = self.edge_vector(k);
                let oriented = if e.from == g.edges()[r].lo {
                    v
                } else {
                    v.iter().map(|x| -x).collect()
                };
                reps[r].push((k, oriented));
            }
        }
        reps
    }

    /// Same framework in the lattice basis `ΛB` for `B ∈ GL_d(ℤ)`.
    pub fn change_basis(&self, b: &RatMatrix) -> Result<Self> {
        if b.rows() != self.dim || b.cols() != self.dim {
            return Err(Error::usage("basis change has the wrong size"));
        }
        if !(0..self.dim).all(|i| (0..self.dim).all(|j| is_integer(&b[(i, j)]))) || b.det().abs() != Rational::one() {
            return Err(Error::usage("basis change must be an integer unimodular matrix"));
        }
        let inv = b.inverse().expect("unimodular");
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let n: RatVec = e.shift.iter().map(|&s| int(s)).collect();
                let shift = inv.mul_vec(&n).iter().map(|x| x.to_integer().to_i64()).collect::<Option<Vec<i64>>>();
                shift
                    .map(|shift| EdgeOrbit { shift, ..e.clone() })
                    .ok_or_else(|| Error::usage("shift overflow"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicFramework {
            dim: self.dim,
            lattice: self.lattice.as_ref().map(|l| l.mul(b)),
            gram: b.transpose().mul(&self.gram).mul(b),
            q: self.q.iter().map(|v| inv.mul_vec(v)).collect(),
            edges,
        })
    }

    /// Applies the Cartesian linear map `Λ M Λ⁻¹`: the basis becomes `ΛM`,
    /// the Gram matrix `MᵗωM`, and lattice coordinates are unchanged.
    pub fn transform_gram(&self, m: &RatMatrix) -> Result<Self> {
        if m.rows() != self.dim || m.cols() != self.dim || m.det().is_zero() {
            return Err(Error::usage("linear map must be an invertible d x d matrix"));
        }
        Ok(PeriodicFramework {
            lattice: self.lattice.as_ref().map(|l| l.mul(m)),
            gram: m.transpose().mul(&self.gram).mul(m),
            ..self.clone()
        })
    }

    /// Applies a Cartesian linear map `A` (requires a stored basis).
    pub fn apply_linear_map(&self, a: &RatMatrix) -> Result<Self> {
        let l = self
            .lattice
            .as_ref()
            .ok_or_else(|| Error::usage("framework has no Cartesian basis"))?;
        if a.rows() != self.dim || a.cols() != self.dim || a.det().is_zero() {
            return Err(Error::usage("linear map must be an invertible d x d matrix"));
        }
        let new_l = a.mul(l);
        Ok(PeriodicFramework {
            gram: new_l.transpose().mul(&new_l),
            lattice: Some(new_l),
            ..self.clone()
        })
    }

    /// Vertex orbit `v` renamed to `perm[v]`; coordinates are translated so
    /// the new orbit 0 sits at the origin.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        super::graph::check_permutation(perm, self.n())?;
        let mut q = vec![Vec::new(); self.n()];
        let origin_old = perm.iter().position(|&p| p == 0).expect("permutation");
        let origin = self.q[origin_old].clone();
        for (v, qv) in self.q.iter().enumerate() {
            q[perm[v]] = sub(qv, &origin);
        }
        Ok(PeriodicFramework {
            q,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeOrbit {
                    from: perm[e.from],
                    to: perm[e.to],
                    ..e.clone()
                })
                .collect(),
            ..self.clone()
        })
    }

    /// Same framework with each edge orbit replaced by its given orientation.
    pub fn with_edges(&self, edges: Vec<EdgeOrbit>) -> Result<Self> {
        Self::from_parts_unchecked(
            self.dim,
            self.lattice.clone(),
            Some(self.gram.clone()),
            self.q[1..].to_vec(),
            edges,
        )
    }

    /// Equal Gram matrices and bases, vertex coordinates differing by integer
    /// vectors, and the same multiset of edge orbits (endpoints plus edge
    /// vector, up to reversal). Edge order and labels are ignored.
    pub fn same_up_to_translation(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.n() != other.n() || self.gram != other.gram || self.lattice != other.lattice {
            return false;
        }
        if !self.q.iter().zip(&other.q).all(|(a, b)| sub(a, b).iter().all(is_integer)) {
            return false;
        }
        let key = |fw: &Self| {
            let mut keys: Vec<(usize, usize, RatVec)> = (0..fw.m())
                .map(|k| {
                    let e = &fw.edges[k];
                    let v = fw.edge_vector(k);
                    if e.from <= e.to {
                        (e.from, e.to, v)
                    } else {
                        (e.to, e.from, v.iter().map(|x| -x).collect())
                    }
                })
                .collect();
            keys.sort();
            keys
        };
        key(self) == key(other)
    }

    /// Float Cartesian basis: `Λ` when stored, otherwise the upper Cholesky
    /// factor of `ω`.
    pub fn cartesian_basis(&self) -> Result<DMatrix<f64>> {
        if let Some(l) = &self.lattice {
            return Ok(l.to_f64());
        }
        let chol = self
            .gram
            .to_f64()
            .cholesky()
            .ok_or_else(|| Error::Invalid("gram matrix is not positive definite".into()))?;
        Ok(chol.l().transpose())
    }

    /// Covolume squared, `det ω`.
    pub fn gram_determinant(&self) -> Rational {
        self.gram.det()
    }

    /// Float copy of `ω`.
    pub fn gram_f64(&self) -> DMatrix<f64> {
        self.gram.to_f64()
    }

    /// Float copy of the lattice coordinates.
    pub fn q_f64(&self) -> Vec<Vec<f64>> {
        self.q.iter().map(|v| v.iter().map(to_f64).collect()).collect()
    }
}
