use num_traits::One;

use super::classify::is_real_ellipsoid;
use crate::ratmath::{int, Poly, QuadricForm, RatMatrix, Rational};
use crate::{Error, Result};

/// A maximal interval of pencil parameters `t` for which `Q₀ + t·Q₁` is a
/// real ellipse or ellipsoid, reported as the open interval `(lo, hi)`.
///
/// Every parameter strictly between `lo` and `hi` qualifies, and each finite
/// end lies within the requested resolution of the true endpoint (exactly on
/// it when that endpoint is rational). `None` means unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilInterval {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
    /// Exact parameter inside the interval: the midpoint when both ends are
    /// finite.
    pub sample: Rational,
}

impl PencilInterval {
    pub fn contains(&self, t: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| lo < t) && self.hi.as_ref().is_none_or(|hi| t < hi)
    }
}

/// Parameters `t` with `Q₀ + t·Q₁` a real ellipse (`d = 2`) or ellipsoid
/// (`d = 3`).
///
/// The class is constant between consecutive real roots of `det A(t)` and
/// `det M(t)`, both polynomials in `t` recovered by exact interpolation.
/// Roots are isolated by Sturm sequences and each gap is classified at one
/// exact sample. The member `Q₁` itself (`t = ∞`) is not covered.
pub fn ellipse_members(q0: &QuadricForm, q1: &QuadricForm, resolution: &Rational) -> Result<Vec<PencilInterval>> {
    let d = q0.dim();
    if q1.dim() != d {
        return Err(Error::usage("pencil forms have different dimensions"));
    }
    if RatMatrix::from_rows(vec![q0.coefficients(), q1.coefficients()])?.rank() < 2 {
        return Err(Error::usage("pencil forms are proportional"));
    }
    // det M(t) has degree ≤ d + 1; sample at d + 2 points.
    let ts: Vec<Rational> = (0..d as i64 + 2).map(int).collect();
    let member = |t: &Rational| q0.matrix().add(&q1.matrix().scale(t));
    let full: Vec<Rational> = ts.iter().map(|t| member(t).det()).collect();
    let quad: Vec<Rational> = ts
        .iter()
        .map(|t| {
            let m = member(t);
            let idx: Vec<usize> = (0..d).collect();
            m.submatrix(&idx, &idx).det()
        })
        .collect();
    let full = Poly::interpolate(&ts, &full);
    let quad = Poly::interpolate(&ts, &quad);
    if full.is_zero() || quad.is_zero() {
        return Ok(Vec::new());
    }
    let roots = full.mul(&quad).isolate_real_roots(resolution);

    let mut out = Vec::new();
    for k in 0..=roots.len() {
        let lo = k.checked_sub(1).map(|i| roots[i].1.clone());
        let hi = roots.get(k).map(|r| r.0.clone());
        let sample = match (&lo, &hi) {
            (Some(a), Some(b)) => (a + b) / int(2),
            (Some(a), None) => a + Rational::one(),
            (None, Some(b)) => b - Rational::one(),
            (None, None) => int(0),
        };
        let q = QuadricForm::from_matrix(member(&sample))?;
        if is_real_ellipsoid(&q)? {
            out.push(PencilInterval { lo, hi, sample });
        }
    }
    Ok(out)
}
