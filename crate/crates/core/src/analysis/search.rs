use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::deformation::{combine, DeformationSpace, InfDeformation};
use crate::parallel::{map_indexed, ExecMode};
use crate::ratmath::{is_positive_definite_exact, nullspace_exact, rationalize, RatMatrix, Rational};

/// Multi-start search settings.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub starts: usize,
    pub seed: u64,
    /// Supergradient iterations per start.
    pub iterations: usize,
    pub mode: ExecMode,
    /// Look for a positive definite witness of infeasibility after a failed
    /// primal search.
    pub dual: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            starts: 64,
            seed: 0,
            iterations: 200,
            mode: ExecMode::default(),
            dual: true,
        }
    }
}

#[derive(Clone, Debug)]
pub enum NotFoundReason {
    /// The deformation space is zero.
    Rigid,
    /// The necessary screen failed, which already rules out a strict
    /// deformation; the search was skipped.
    Screened,
    /// No certificate either way.
    Inconclusive,
    /// A positive definite `W` with `⟨W, ω̇⟩ = 0` for every deformation:
    /// no `ω̇` in the space is positive semidefinite and nonzero.
    Obstructed { witness: RatMatrix },
}

#[derive(Clone, Debug)]
pub struct NotFound {
    pub reason: NotFoundReason,
    /// Best `λ_min(ω̇)` over unit-norm `ω̇` found by the search.
    pub best_lambda_min: f64,
}

impl NotFound {
    pub fn is_proof(&self) -> bool {
        !matches!(self.reason, NotFoundReason::Inconclusive)
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    /// Exactly certified: satisfies the rigidity system and `ω̇` passes the
    /// exact positive definiteness test.
    Strict(InfDeformation),
    NotFound(NotFound),
}

impl SearchOutcome {
    pub fn strict(&self) -> Option<&InfDeformation> {
        match self {
            SearchOutcome::Strict(d) => Some(d),
            SearchOutcome::NotFound(_) => None,
        }
    }

    pub fn is_strict(&self) -> bool {
        self.strict().is_some()
    }
}

/// Looks for a strictly auxetic deformation in `space`.
pub fn find_strict_auxetic(space: &DeformationSpace, config: &SearchConfig) -> SearchOutcome {
    if space.basis.is_empty() {
        return SearchOutcome::NotFound(NotFound {
            reason: NotFoundReason::Rigid,
            best_lambda_min: f64::NEG_INFINITY,
        });
    }
    let mats: Vec<RatMatrix> = space.basis.iter().map(|b| b.omegadot.clone()).collect();
    let found = pd_in_span(&mats, config);
    if let Some(x) = &found.certified {
        let def = combine(&space.basis, x);
        debug_assert!(def.is_strict());
        return SearchOutcome::Strict(def);
    }
    let complement = orthogonal_complement(&mats, space.basis[0].dim());
    let reason = if config.dual && !complement.is_empty() {
        match pd_in_span(&complement, config).certified {
            Some(y) => NotFoundReason::Obstructed {
                witness: combine_mats(&complement, &y),
            },
            None => NotFoundReason::Inconclusive,
        }
    } else {
        NotFoundReason::Inconclusive
    };
    SearchOutcome::NotFound(NotFound {
        reason,
        best_lambda_min: found.best_lambda_min,
    })
}

pub(crate) struct SpanSearch {
    pub best_lambda_min: f64,
    /// Exact coefficients with a positive definite combination.
    pub certified: Option<Vec<Rational>>,
}

fn weights(d: usize) -> Vec<(usize, usize, f64)> {
    let mut w = Vec::new();
    for a in 0..d {
        for b in a..d {
            w.push((a, b, if a == b { 1.0 } else { std::f64::consts::SQRT_2 }));
        }
    }
    w
}

/// Flattening under which the Frobenius inner product is the dot product.
fn flatten(m: &DMatrix<f64>) -> Vec<f64> {
    weights(m.nrows()).iter().map(|&(a, b, w)| w * m[(a, b)]).collect()
}

fn unflatten(d: usize, v: &[f64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(d, d);
    for (&(a, b, w), x) in weights(d).iter().zip(v) {
        m[(a, b)] = x / w;
        m[(b, a)] = x / w;
    }
    m
}

pub(crate) fn lambda_min(m: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = m.clone().symmetric_eigen();
    let (i, &l) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    (l, eig.eigenvectors.column(i).into_owned())
}

/// Supergradient ascent of `λ_min(Σ y_s B_s)` on the unit sphere, where the
/// `B_s` are Frobenius-orthonormal. Returns the best value and point.
pub(crate) fn ascend(basis: &[DMatrix<f64>], start: DVector<f64>, iterations: usize) -> (f64, DVector<f64>) {
    let d = basis[0].nrows();
    let eval = |y: &DVector<f64>| {
        let mut m = DMatrix::zeros(d, d);
        for (b, c) in basis.iter().zip(y.iter()) {
            m += b * *c;
        }
        lambda_min(&m)
    };
    let mut y = start.normalize();
    let (mut best, mut best_y) = (eval(&y).0, y.clone());
    for it in 0..iterations {
        let (l, v) = eval(&y);
        if l > best {
            best = l;
            best_y = y.clone();
        }
        let mut g = DVector::from_iterator(basis.len(), basis.iter().map(|b| (v.transpose() * b * &v)[(0, 0)]));
        g -= &y * g.dot(&y);
        let gn = g.norm();
        if gn < 1e-14 {
            break;
        }
        let step = 0.5 / ((it + 1) as f64).sqrt();
        y = (&y + g * (step / gn)).normalize();
    }
    let (l, _) = eval(&y);
    if l > best {
        best = l;
        best_y = y;
    }
    (best, best_y)
}

/// Searches the span of exact symmetric matrices for a positive definite
/// member and certifies it exactly.
pub(crate) fn pd_in_span(mats: &[RatMatrix], config: &SearchConfig) -> SpanSearch {
    let d = mats[0].rows();
    let k = mats.len();
    let cols: Vec<Vec<f64>> = mats.iter().map(|m| flatten(&m.to_f64())).collect();
    let p = cols[0].len();
    let f = DMatrix::from_fn(p, k, |i, j| cols[j][i]);
    let svd = f.clone().svd(true, true);
    let (u, vt) = (svd.u.expect("u"), svd.v_t.expect("v_t"));
    let smax = svd.singular_values.max();
    let rank_idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > 1e-10 * smax)
        .collect();
    if rank_idx.is_empty() {
        return SpanSearch {
            best_lambda_min: 0.0,
            certified: None,
        };
    }
    let basis: Vec<DMatrix<f64>> = rank_idx
        .iter()
        .map(|&i| unflatten(d, u.column(i).as_slice()))
        .collect();
    let r = basis.len();

    let results = map_indexed(config.mode, config.starts.max(1), |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(s as u64);
        let start = DVector::from_iterator(r, (0..r).map(|_| rng.random_range(-1.0..1.0)));
        let start = if start.norm() < 1e-12 { DVector::from_element(r, 1.0) } else { start };
        ascend(&basis, start, config.iterations)
    });
    let mut order: Vec<usize> = (0..results.len()).collect();
    order.sort_by(|&a, &b| results[b].0.total_cmp(&results[a].0).then(a.cmp(&b)));
    let best_lambda_min = results[order[0]].0;

    let mut certified = None;
    'outer: for &s in order.iter().take(8) {
        let (l, y) = &results[s];
        if *l <= 0.0 {
            break;
        }
        // y ↦ x with F x = U_r y.
        let mut x = vec![0.0; k];
        for (yi, &i) in y.iter().zip(&rank_idx) {
            let c = yi / svd.singular_values[i];
            for (j, xj) in x.iter_mut().enumerate() {
                *xj += c * vt[(i, j)];
            }
        }
        let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for denom in [1_000u64, 1_000_000, 1_000_000_000] {
            let xr: Vec<Rational> = x.iter().map(|v| rationalize(v / scale, denom)).collect();
            if is_positive_definite_exact(&combine_mats(mats, &xr)).unwrap_or(false) {
                certified = Some(xr);
                break 'outer;
            }
        }
    }
    SpanSearch {
        best_lambda_min,
        certified,
    }
}

pub(crate) fn combine_mats(mats: &[RatMatrix], x: &[Rational]) -> RatMatrix {
    let d = mats[0].rows();
    mats.iter()
        .zip(x)
        .fold(RatMatrix::zeros(d, d), |acc, (m, c)| acc.add(&m.scale(c)))
}

/// Basis of symmetric `W` with `Σ_ab W_ab M_ab = 0` for all given `M`.
pub(crate) fn orthogonal_complement(mats: &[RatMatrix], d: usize) -> Vec<RatMatrix> {
    let two = Rational::from_integer(2.into());
    let idx: Vec<(usize, usize)> = (0..d).flat_map(|a| (a..d).map(move |b| (a, b))).collect();
    let rows: Vec<Vec<Rational>> = mats
        .iter()
        .map(|m| {
            idx.iter()
                .map(|&(a, b)| if a == b { m[(a, b)].clone() } else { &two * &m[(a, b)] })
                .collect()
        })
        .collect();
    let system = RatMatrix::from_rows(rows).expect("rectangular");
    nullspace_exact(&system)
        .into_iter()
        .map(|w| {
            RatMatrix::from_fn(d, d, |a, b| {
                let pos = idx.iter().position(|&(p, q)| (p, q) == (a.min(b), a.max(b))).expect("index");
                w[pos].clone()
            })
        })
        .collect()
}
