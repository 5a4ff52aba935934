use num_traits::{Signed, Zero};

use crate::ratmath::QuadricForm;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicClass {
    RealEllipse,
    Hyperbola,
    Parabola,
    Degenerate,
    Imaginary,
}

impl ConicClass {
    pub fn label(self) -> &'static str {
        match self {
            ConicClass::RealEllipse => "real ellipse",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::Parabola => "parabola",
            ConicClass::Degenerate => "degenerate conic",
            ConicClass::Imaginary => "imaginary ellipse",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricClass {
    RealEllipsoid,
    ImaginaryEllipsoid,
    HyperboloidOneSheet,
    HyperboloidTwoSheets,
    EllipticParaboloid,
    HyperbolicParaboloid,
    Degenerate,
}

impl QuadricClass {
    pub fn label(self) -> &'static str {
        match self {
            QuadricClass::RealEllipsoid => "real ellipsoid",
            QuadricClass::ImaginaryEllipsoid => "imaginary ellipsoid",
            QuadricClass::HyperboloidOneSheet => "hyperboloid of one sheet",
            QuadricClass::HyperboloidTwoSheets => "hyperboloid of two sheets",
            QuadricClass::EllipticParaboloid => "elliptic paraboloid",
            QuadricClass::HyperbolicParaboloid => "hyperbolic paraboloid",
            QuadricClass::Degenerate => "degenerate quadric",
        }
    }
}

/// Exact conic type from `δ = det A`, `Δ = det M` and the sign of `a₁₁Δ`.
pub fn classify_conic(q: &QuadricForm) -> Result<ConicClass> {
    if q.dim() != 2 {
        return Err(Error::usage(format!("conic classification needs d = 2, got d = {}", q.dim())));
    }
    let big = q.matrix().det();
    if big.is_zero() {
        return Ok(ConicClass::Degenerate);
    }
    let a = q.quadratic_part();
    let small = a.det();
    Ok(if small.is_positive() {
        // δ > 0 forces a₁₁ ≠ 0.
        if (&a[(0, 0)] * &big).is_negative() {
            ConicClass::RealEllipse
        } else {
            ConicClass::Imaginary
        }
    } else if small.is_negative() {
        ConicClass::Hyperbola
    } else {
        ConicClass::Parabola
    })
}

/// Exact quadric surface type from the inertia of the quadratic part and the
/// sign of the full determinant.
///
/// Negating the form changes neither the surface nor the 4×4 determinant, so
/// the quadratic part is normalized to have at least as many positive as
/// negative eigenvalues before reading off the sign of `Δ`.
pub fn classify_quadric(q: &QuadricForm) -> Result<QuadricClass> {
    if q.dim() != 3 {
        return Err(Error::usage(format!("quadric classification needs d = 3, got d = {}", q.dim())));
    }
    let big = q.matrix().det();
    if big.is_zero() {
        return Ok(QuadricClass::Degenerate);
    }
    let (pos, neg, zero) = q.quadratic_part().inertia()?;
    let (pos, neg) = (pos.max(neg), pos.min(neg));
    Ok(match (pos, neg, zero) {
        (3, 0, 0) if big.is_negative() => QuadricClass::RealEllipsoid,
        (3, 0, 0) => QuadricClass::ImaginaryEllipsoid,
        (2, 1, 0) if big.is_positive() => QuadricClass::HyperboloidOneSheet,
        (2, 1, 0) => QuadricClass::HyperboloidTwoSheets,
        (2, 0, 1) => QuadricClass::EllipticParaboloid,
        _ => QuadricClass::HyperbolicParaboloid,
    })
}

/// Real ellipse (`d = 2`) or real ellipsoid (`d = 3`).
pub fn is_real_ellipsoid(q: &QuadricForm) -> Result<bool> {
    match q.dim() {
        2 => Ok(classify_conic(q)? == ConicClass::RealEllipse),
        _ => Ok(classify_quadric(q)? == QuadricClass::RealEllipsoid),
    }
}

/// Class label for either dimension.
pub(crate) fn class_label(q: &QuadricForm) -> Result<&'static str> {
    match q.dim() {
        2 => Ok(classify_conic(q)?.label()),
        _ => Ok(classify_quadric(q)?.label()),
    }
}
