//! Numerical continuation of auxetic one-parameter deformations.
//!
//! The state vector packs `q_1 … q_{n−1}` and the upper triangle of `ω` in
//! the same order as the rigidity-system unknowns, so a tangent is an
//! infinitesimal deformation in float form. Every step is an Euler
//! predictor followed by a Gauss–Newton projection back onto the edge-length
//! constraints.

use nalgebra::{DMatrix, DVector};
use serde_json::{json, Value};

use crate::analysis::{ascend, sym_count, sym_index, unknown_count, InfDeformation};
use crate::model::PeriodicFramework;
use crate::ratmath::to_f64;
use crate::{Error, Result};

/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOLERANCE: f64 = 1e-8;
/// λ_min(ω̇) at or below this value ends a trace at the auxetic boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;
const CORRECTOR_TARGET: f64 = 1e-12;
const RESIDUAL_LIMIT: f64 = 1e-9;
const CORRECTOR_ITERATIONS: usize = 20;
const MIN_STEP: f64 = 1e-8;
const BOUNDARY_RESOLUTION: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct TraceConfig {
    pub h: f64,
    pub max_steps: usize,
    /// Extra homogeneous linear equations on tangents (rows over the
    /// unknowns). They also constrain the corrector, so the trace stays in
    /// the pinned subfamily.
    pub pins: Option<DMatrix<f64>>,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            h: 1e-2,
            max_steps: 1000,
            pins: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Boundary,
    StepLimit,
    Singular,
}

impl Termination {
    pub fn label(self) -> &'static str {
        match self {
            Termination::Boundary => "boundary",
            Termination::StepLimit => "step-limit",
            Termination::Singular => "singular",
        }
    }
}

/// `+1` traces an expansion (ω̇ positive semidefinite), `−1` the mirror
/// contraction (ω̇ negative semidefinite).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Expand,
    Contract,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Expand => 1.0,
            Orientation::Contract => -1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PathState {
    pub step: usize,
    /// Cumulative arclength of the packed state vector.
    pub parameter: f64,
    pub x: DVector<f64>,
    pub gram: DMatrix<f64>,
    pub q: Vec<DVector<f64>>,
    /// Unit tangent in packed form.
    pub tangent: DVector<f64>,
    pub omegadot: DMatrix<f64>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Largest absolute edge-length residual.
    pub residual: f64,
    /// Float rank of the rigidity matrix (pins excluded).
    pub rank: usize,
    pub det_gram: f64,
}

#[derive(Clone, Debug)]
pub struct PathTrace {
    pub states: Vec<PathState>,
    pub termination: Termination,
    pub orientation: Orientation,
}

/// Float constraint system of a framework: fixed combinatorics, shifts and
/// squared lengths.
#[derive(Clone, Debug)]
pub struct PathSystem {
    dim: usize,
    n: usize,
    edges: Vec<(usize, usize, DVector<f64>)>,
    lengths_sq: Vec<f64>,
    pins: DMatrix<f64>,
}

impl PathSystem {
    pub fn new(fw: &PeriodicFramework, pins: Option<&DMatrix<f64>>) -> Result<Self> {
        let (dim, n) = (fw.dim(), fw.n());
        let cols = unknown_count(dim, n);
        let pins = match pins {
            Some(p) if p.ncols() != cols => {
                return Err(Error::usage(format!("pin rows need {cols} columns, got {}", p.ncols())))
            }
            Some(p) => p.clone(),
            None => DMatrix::zeros(0, cols),
        };
        let edges = (0..fw.m())
            .map(|k| {
                let e = fw.edge(k);
                (e.from, e.to, DVector::from_iterator(dim, e.shift.iter().map(|&s| s as f64)))
            })
            .collect();
        let lengths_sq = (0..fw.m()).map(|k| to_f64(&fw.edge_length_sq(k))).collect();
        Ok(PathSystem {
            dim,
            n,
            edges,
            lengths_sq,
            pins,
        })
    }

    pub fn unknowns(&self) -> usize {
        unknown_count(self.dim, self.n)
    }

    pub fn pack(&self, fw: &PeriodicFramework) -> DVector<f64> {
        let d = self.dim;
        let mut x = DVector::zeros(self.unknowns());
        for v in 1..self.n {
            for a in 0..d {
                x[(v - 1) * d + a] = to_f64(&fw.q(v)[a]);
            }
        }
        let off = d * (self.n - 1);
        for a in 0..d {
            for b in a..d {
                x[off + sym_index(d, a, b)] = to_f64(&fw.gram()[(a, b)]);
            }
        }
        x
    }

    pub fn pack_deformation(&self, def: &InfDeformation) -> DVector<f64> {
        DVector::from_iterator(self.unknowns(), def.to_vector().iter().map(to_f64))
    }

    fn sym_block(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim;
        let off = d * (self.n - 1);
        DMatrix::from_fn(d, d, |a, b| x[off + sym_index(d, a, b)])
    }

    pub fn gram(&self, x: &DVector<f64>) -> DMatrix<f64> {
        self.sym_block(x)
    }

    /// The `ω̇` block of a packed tangent.
    pub fn omegadot(&self, t: &DVector<f64>) -> DMatrix<f64> {
        self.sym_block(t)
    }

    pub fn positions(&self, x: &DVector<f64>) -> Vec<DVector<f64>> {
        let d = self.dim;
        (0..self.n)
            .map(|v| {
                if v == 0 {
                    DVector::zeros(d)
                } else {
                    x.rows((v - 1) * d, d).into_owned()
                }
            })
            .collect()
    }

    fn edge_vectors(&self, x: &DVector<f64>) -> Vec<DVector<f64>> {
        let q = self.positions(x);
        self.edges.iter().map(|(i, j, s)| &q[*j] + s - &q[*i]).collect()
    }

    pub fn residuals(&self, x: &DVector<f64>) -> DVector<f64> {
        let w = self.gram(x);
        let es = self.edge_vectors(x);
        DVector::from_iterator(
            es.len(),
            es.iter().zip(&self.lengths_sq).map(|(e, l)| (e.transpose() * &w * e)[0] - l),
        )
    }

    /// Rigidity matrix at `x`: row `k` is the gradient of `⟨ωe,e⟩`.
    pub fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim;
        let w = self.gram(x);
        let off = d * (self.n - 1);
        let mut j = DMatrix::zeros(self.edges.len(), self.unknowns());
        for (k, e) in self.edge_vectors(x).iter().enumerate() {
            let (from, to, _) = &self.edges[k];
            let we = &w * e * 2.0;
            for a in 0..d {
                if *to > 0 {
                    j[(k, (to - 1) * d + a)] += we[a];
                }
                if *from > 0 {
                    j[(k, (from - 1) * d + a)] -= we[a];
                }
                for b in a..d {
                    let c = if a == b { e[a] * e[a] } else { 2.0 * e[a] * e[b] };
                    j[(k, off + sym_index(d, a, b))] = c;
                }
            }
        }
        j
    }

    fn constraint_matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let j = self.jacobian(x);
        let (m, k, cols) = (j.nrows(), self.pins.nrows(), self.unknowns());
        // Padded to at least `cols` rows so the SVD returns a full V.
        DMatrix::from_fn((m + k).max(cols), cols, |r, c| {
            if r < m {
                j[(r, c)]
            } else if r < m + k {
                self.pins[(r - m, c)]
            } else {
                0.0
            }
        })
    }

    fn max_length_sq(&self) -> f64 {
        self.lengths_sq.iter().fold(1.0_f64, |a, &b| a.max(b.abs()))
    }
}

fn float_rank(m: &DMatrix<f64>) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let tol = RANK_TOLERANCE * sv.max().max(1.0);
    sv.iter().filter(|&&s| s > tol).count()
}

/// Orthonormal basis of the float null space of the constraints plus pins.
fn null_basis(sys: &PathSystem, x: &DVector<f64>) -> DMatrix<f64> {
    let a = sys.constraint_matrix(x);
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let tol = RANK_TOLERANCE * svd.singular_values.max().max(1.0);
    let cols: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= tol)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(sys.unknowns(), 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Tangent at `x`: the unit null direction maximizing `λ_min(±ω̇)` with a
/// positive inner product with `previous`.
///
/// Fails when the null space is empty or, if `expected` is given, when its
/// dimension differs from `expected` (a rank change marks a singular
/// point).
pub fn tangent_select(
    sys: &PathSystem,
    x: &DVector<f64>,
    previous: &DVector<f64>,
    orientation: Orientation,
    expected: Option<usize>,
) -> Option<DVector<f64>> {
    let z = null_basis(sys, x);
    let k = z.ncols();
    if k == 0 || expected.is_some_and(|e| e != k) {
        return None;
    }
    let mut y0 = z.transpose() * previous;
    if y0.norm() < 1e-12 {
        y0 = DVector::from_fn(k, |i, _| if i == 0 { 1.0 } else { 0.0 });
    }
    let y0 = y0.normalize();
    let y = if k == 1 {
        y0
    } else {
        let s = orientation.sign();
        let blocks: Vec<DMatrix<f64>> = (0..k).map(|c| sys.omegadot(&z.column(c).into_owned()) * s).collect();
        let (_, y) = ascend(&blocks, y0.clone(), 200);
        if y.dot(&y0) > 0.0 {
            y
        } else {
            y0
        }
    };
    Some((z * y).normalize())
}

fn correct(sys: &PathSystem, mut x: DVector<f64>) -> Option<DVector<f64>> {
    let scale = sys.max_length_sq();
    for _ in 0..CORRECTOR_ITERATIONS {
        let f = sys.residuals(&x);
        if f.amax() <= CORRECTOR_TARGET * scale {
            break;
        }
        let a = sys.constraint_matrix(&x);
        let rhs = DVector::from_fn(a.nrows(), |r, _| if r < f.len() { -f[r] } else { 0.0 });
        let svd = a.svd(true, true);
        let tol = RANK_TOLERANCE * svd.singular_values.max().max(1.0);
        let delta = svd.solve(&rhs, tol).ok()?;
        x += delta;
        if !x.iter().all(|v| v.is_finite()) {
            return None;
        }
    }
    let ok = sys.residuals(&x).amax() <= RESIDUAL_LIMIT * scale && sys.gram(&x).cholesky().is_some();
    ok.then_some(x)
}

fn make_state(
    sys: &PathSystem,
    step: usize,
    parameter: f64,
    x: DVector<f64>,
    tangent: DVector<f64>,
) -> PathState {
    let gram = sys.gram(&x);
    let omegadot = sys.omegadot(&tangent);
    let eig = omegadot.clone().symmetric_eigen().eigenvalues;
    PathState {
        step,
        parameter,
        q: sys.positions(&x),
        det_gram: gram.determinant(),
        residual: sys.residuals(&x).amax(),
        rank: float_rank(&sys.jacobian(&x)),
        lambda_min: eig.min(),
        lambda_max: eig.max(),
        omegadot,
        gram,
        tangent,
        x,
    }
}

/// Predictor–corrector step of length at most `h` along `tangent`, followed
/// by tangent selection at the new point. The step is halved on corrector
/// failure down to `1e−8`; `None` signals a singular point.
pub fn step_project(
    sys: &PathSystem,
    state: &PathState,
    tangent: &DVector<f64>,
    h: f64,
    orientation: Orientation,
    expected: Option<usize>,
) -> Option<PathState> {
    if h == 0.0 {
        return Some(state.clone());
    }
    let mut h = h;
    while h >= MIN_STEP {
        if let Some(x) = correct(sys, &state.x + tangent * h) {
            if let Some(t) = tangent_select(sys, &x, tangent, orientation, expected) {
                let travelled = (&x - &state.x).norm();
                return Some(make_state(sys, state.step + 1, state.parameter + travelled, x, t));
            }
        }
        h /= 2.0;
    }
    None
}

/// Exact step of length `h` without halving; used to bisect onto the
/// boundary.
fn step_exact(
    sys: &PathSystem,
    state: &PathState,
    h: f64,
    orientation: Orientation,
    expected: Option<usize>,
) -> Option<PathState> {
    let x = correct(sys, &state.x + &state.tangent * h)?;
    let t = tangent_select(sys, &x, &state.tangent, orientation, expected)?;
    let travelled = (&x - &state.x).norm();
    Some(make_state(sys, state.step + 1, state.parameter + travelled, x, t))
}

/// Auxetic measure: `λ_min(ω̇)` when expanding, `λ_min(−ω̇)` when contracting.
fn measure(state: &PathState, orientation: Orientation) -> f64 {
    match orientation {
        Orientation::Expand => state.lambda_min,
        Orientation::Contract => -state.lambda_max,
    }
}

/// Follows the deformation started by `certificate` until the auxetic
/// boundary, a singular point or the step limit.
///
/// A positive definite certificate traces an expansion, a negative definite
/// one the mirror contraction.
pub fn trace_auxetic_path(
    fw: &PeriodicFramework,
    certificate: &InfDeformation,
    config: &TraceConfig,
) -> Result<PathTrace> {
    // Written negated so NaN is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(config.h > 0.0) {
        return Err(Error::usage("step size h must be positive"));
    }
    if !certificate.satisfies(fw) {
        return Err(Error::usage("certificate does not satisfy the rigidity system"));
    }
    let orientation = if certificate.is_strict() {
        Orientation::Expand
    } else if certificate.negated().is_strict() {
        Orientation::Contract
    } else {
        return Err(Error::usage("certificate is not strictly auxetic"));
    };
    let sys = PathSystem::new(fw, config.pins.as_ref())?;
    let x0 = sys.pack(fw);
    let cert = sys.pack_deformation(certificate).normalize();
    let expected = Some(null_basis(&sys, &x0).ncols());
    let t0 = if sys.pins.nrows() == 0 || (&sys.pins * &cert).amax() <= 1e-12 {
        cert
    } else {
        tangent_select(&sys, &x0, &cert, orientation, expected)
            .ok_or_else(|| Error::usage("pins leave no tangent direction"))?
    };
    let mut states = vec![make_state(&sys, 0, 0.0, x0, t0)];
    if measure(&states[0], orientation) <= BOUNDARY_TOLERANCE {
        return Err(Error::usage("pinned tangent is not strictly auxetic"));
    }

    for _ in 0..config.max_steps {
        let current = states.last().expect("nonempty");
        let Some(next) = step_project(&sys, current, &current.tangent.clone(), config.h, orientation, expected) else {
            return Ok(PathTrace { states, termination: Termination::Singular, orientation });
        };
        if measure(&next, orientation) > BOUNDARY_TOLERANCE {
            states.push(next);
            continue;
        }
        // Bisect the step length onto the sign change of the measure.
        let h_used = (&next.x - &current.x).norm().max(MIN_STEP);
        let (mut lo, mut hi) = (0.0_f64, h_used);
        let mut best: Option<PathState> = None;
        for _ in 0..100 {
            let close = hi - lo <= BOUNDARY_RESOLUTION
                && best.as_ref().is_some_and(|b| measure(b, orientation) <= BOUNDARY_RESOLUTION);
            if close {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match step_exact(&sys, current, mid, orientation, expected) {
                Some(s) if measure(&s, orientation) > 0.0 => {
                    lo = mid;
                    best = Some(s);
                }
                _ => hi = mid,
            }
        }
        if let Some(b) = best {
            states.push(b);
        }
        return Ok(PathTrace { states, termination: Termination::Boundary, orientation });
    }
    Ok(PathTrace { states, termination: Termination::StepLimit, orientation })
}

/// Pins keeping `ω̇` a multiple of the identity: `ω̇_ab = 0` for `a < b` and
/// `ω̇_aa = ω̇_00`.
pub fn scalar_gram_pins(dim: usize, n: usize) -> DMatrix<f64> {
    let off = dim * (n - 1);
    let cols = unknown_count(dim, n);
    let mut rows: Vec<DVector<f64>> = Vec::new();
    for a in 0..dim {
        for b in a..dim {
            if a == 0 && b == 0 {
                continue;
            }
            let mut r = DVector::zeros(cols);
            r[off + sym_index(dim, a, b)] = 1.0;
            if a == b {
                r[off + sym_index(dim, 0, 0)] = -1.0;
            }
            rows.push(r);
        }
    }
    debug_assert_eq!(rows.len(), sym_count(dim) - 1);
    DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j])
}

fn matrix_json(m: &DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|i| json!((0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>())).collect())
}

fn state_json(s: &PathState) -> Value {
    json!({
        "step": s.step,
        "parameter": s.parameter,
        "gram": matrix_json(&s.gram),
        "vertices": s.q.iter().map(|v| v.iter().copied().collect::<Vec<f64>>()).collect::<Vec<_>>(),
        "tangent": s.tangent.iter().copied().collect::<Vec<f64>>(),
        "omegadot": matrix_json(&s.omegadot),
        "lambda_min": s.lambda_min,
        "lambda_max": s.lambda_max,
        "residual": s.residual,
        "rank": s.rank,
        "det_gram": s.det_gram,
    })
}

/// JSON lines: one record per state, then a summary record.
pub fn trace_to_json_lines(trace: &PathTrace) -> String {
    let mut out = String::new();
    for s in &trace.states {
        out.push_str(&state_json(s).to_string());
        out.push('\n');
    }
    let last = trace.states.last().expect("nonempty");
    let summary = json!({
        "summary": {
            "termination": trace.termination.label(),
            "orientation": match trace.orientation { Orientation::Expand => "expand", Orientation::Contract => "contract" },
            "states": trace.states.len(),
            "final_parameter": last.parameter,
            "final_lambda_min": last.lambda_min,
            "max_residual": trace.states.iter().map(|s| s.residual).fold(0.0_f64, f64::max),
        }
    });
    out.push_str(&summary.to_string());
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{builtin_kagome, builtin_kagome_regular, builtin_tetrahedral};
    use crate::ratmath::rat;

    fn kagome_trace(h: f64, max_steps: usize) -> PathTrace {
        let (fw, def) = builtin_kagome();
        trace_auxetic_path(&fw, &def, &TraceConfig { h, max_steps, pins: None }).unwrap()
    }

    #[test]
    fn kagome_expands_to_the_regular_configuration() {
        let trace = kagome_trace(1e-2, 1000);
        assert_eq!(trace.termination, Termination::Boundary);
        assert_eq!(trace.orientation, Orientation::Expand);
        for s in &trace.states {
            assert!(s.residual <= 1e-9);
            assert!(s.lambda_min >= -1e-9);
            // Every state lies on the analytic twisted family
            // q_1 = ((1−r)/2, r), ω = [[4,2],[2,4]]/(1+3r²).
            let r = s.q[1][1];
            assert!((s.q[1][0] - (1.0 - r) / 2.0).abs() < 1e-8);
            assert!((s.q[2][0] + r).abs() < 1e-8);
            let c = 1.0 / (1.0 + 3.0 * r * r);
            assert!((s.gram[(0, 0)] - 4.0 * c).abs() < 1e-8 && (s.gram[(0, 1)] - 2.0 * c).abs() < 1e-8);
        }
        assert!(trace.states.windows(2).all(|w| w[1].det_gram > w[0].det_gram));
        let last = trace.states.last().unwrap();
        assert!(last.lambda_min <= 1e-6);
        // Maximal area: det ω = 12 at r = 0.
        assert!((last.det_gram - 12.0).abs() < 1e-6);
        assert!(last.q[1][1].abs() < 1e-5);
    }

    #[test]
    fn zero_steps_keep_the_certificate_direction() {
        let (fw, def) = builtin_kagome();
        let trace = trace_auxetic_path(&fw, &def, &TraceConfig { max_steps: 0, ..TraceConfig::default() }).unwrap();
        assert_eq!(trace.states.len(), 1);
        assert_eq!(trace.termination, Termination::StepLimit);
        let sys = PathSystem::new(&fw, None).unwrap();
        let cert = sys.pack_deformation(&def).normalize();
        assert!((&trace.states[0].tangent - cert).amax() < 1e-15);
    }

    #[test]
    fn single_steps() {
        let (fw, def) = builtin_kagome();
        let trace = trace_auxetic_path(&fw, &def, &TraceConfig { max_steps: 0, ..TraceConfig::default() }).unwrap();
        let sys = PathSystem::new(&fw, None).unwrap();
        let s0 = &trace.states[0];
        let same = step_project(&sys, s0, &s0.tangent, 0.0, Orientation::Expand, Some(1)).unwrap();
        assert_eq!(same.x, s0.x);
        let s1 = step_project(&sys, s0, &s0.tangent, 1e-3, Orientation::Expand, Some(1)).unwrap();
        assert!(s1.residual <= 1e-12);
        assert!(s1.det_gram > s0.det_gram);
    }

    #[test]
    fn finite_difference_gram_velocity_is_first_order() {
        // r = 1/3 is an inflection point of ω(r) = ω₀/(1+3r²), where the first
        // order term vanishes; test further along the path.
        let (fw, _) = builtin_kagome();
        let sys = PathSystem::new(&fw, None).unwrap();
        let trace = kagome_trace(1e-2, 60);
        let s0 = &trace.states[60];
        assert!((s0.q[1][1] - 1.0 / 3.0).abs() > 0.05);
        let err = |h: f64| {
            let s1 = step_project(&sys, s0, &s0.tangent, h, Orientation::Expand, Some(1)).unwrap();
            ((&s1.gram - &s0.gram) / h - &s0.omegadot).amax()
        };
        let ratio = err(1e-2) / err(5e-3);
        assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn negated_certificate_contracts() {
        let (fw, def) = builtin_kagome();
        let trace = trace_auxetic_path(&fw, &def.negated(), &TraceConfig { h: 1e-2, max_steps: 30, pins: None }).unwrap();
        assert_eq!(trace.orientation, Orientation::Contract);
        assert!(trace.states.iter().all(|s| s.lambda_max <= 1e-9 && s.residual <= 1e-9));
        assert!(trace.states.windows(2).all(|w| w[1].det_gram < w[0].det_gram));
    }

    #[test]
    fn regular_kagome_sits_on_the_boundary() {
        let fw = builtin_kagome_regular();
        let sys = PathSystem::new(&fw, None).unwrap();
        let x = sys.pack(&fw);
        let prev = DVector::from_element(sys.unknowns(), 1.0);
        let t = tangent_select(&sys, &x, &prev, Orientation::Expand, Some(1)).unwrap();
        let eig = sys.omegadot(&t).symmetric_eigen().eigenvalues;
        assert!(eig.amax() < 1e-9, "{eig}");
    }

    #[test]
    fn symmetric_tetrahedral_trace_keeps_the_bar_vector_norm() {
        let (alpha, beta) = (rat(12, 5), rat(6, 5));
        let (fw, cert) = builtin_tetrahedral(&alpha, &beta).unwrap();
        let pins = scalar_gram_pins(3, 4);
        let trace = trace_auxetic_path(&fw, &cert.deformation, &TraceConfig { h: 2e-2, max_steps: 300, pins: Some(pins) }).unwrap();
        let k = fw.edges().iter().position(|e| e.label.as_deref() == Some("12A")).unwrap();
        let sys = PathSystem::new(&fw, None).unwrap();
        let target = to_f64(&(&alpha * &alpha + &beta * &beta));
        for s in &trace.states {
            assert_eq!(s.rank, 11);
            // ω stays scalar, so the Cartesian frame is √ω₀₀ times lattice coordinates.
            let scale = s.gram[(0, 0)].sqrt();
            assert!((s.gram.clone() - DMatrix::identity(3, 3) * s.gram[(0, 0)]).amax() < 1e-9);
            let (from, to, shift) = &sys.edges[k];
            let e = (&s.q[*to] + shift - &s.q[*from]) * scale;
            assert!(e[2].abs() < 1e-8, "edge left the plane: {e}");
            assert!((e[0] * e[0] + e[1] * e[1] - target).abs() < 1e-8);
        }
        assert!(trace.states.len() > 100);
    }

    #[test]
    fn rejects_bad_inputs() {
        let (fw, def) = builtin_kagome();
        let bad = TraceConfig { pins: Some(DMatrix::zeros(1, 3)), ..TraceConfig::default() };
        assert!(matches!(trace_auxetic_path(&fw, &def, &bad), Err(Error::Usage(_))));
        let zero_h = TraceConfig { h: 0.0, ..TraceConfig::default() };
        assert!(matches!(trace_auxetic_path(&fw, &def, &zero_h), Err(Error::Usage(_))));
        let mut flat = def.clone();
        flat.omegadot = flat.omegadot.scale(&rat(0, 1));
        assert!(trace_auxetic_path(&fw, &flat, &TraceConfig::default()).is_err());
    }

    #[test]
    fn json_lines_end_with_a_summary() {
        let trace = kagome_trace(5e-2, 3);
        let text = trace_to_json_lines(&trace);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), trace.states.len() + 1);
        let summary: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
        assert_eq!(summary["summary"]["termination"], "step-limit");
        let first: Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["step"], 0);
    }
}
