//! Exact rational arithmetic and the geometric primitives built on it.
//!
//! Everything here is exact: no operation rounds. Floats only appear in the
//! explicit conversion helpers ([`to_f64`], [`rationalize`]).

mod convex;
mod lattice;
mod matrix;
mod poly;
mod quadric;
mod sphere;

pub use convex::{in_convex_hull, strictly_convex_position};
pub use lattice::{hermite_normal_form, lattice_span, lll_reduce, LatticeBasis};
pub use matrix::{
    is_positive_definite_exact, nullspace_exact, solve_linear_exact, LinearSolution, RatMatrix,
};
pub use poly::Poly;
pub use quadric::{monomials, quadric_space_through, QuadricForm};
pub use sphere::{rational_sphere_point, RationalSphere};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Rational vector.
pub type RatVec = Vec<Rational>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds a rational vector from `(numerator, denominator)` pairs.
pub fn ratvec(entries: &[(i64, i64)]) -> RatVec {
    entries.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn intvec(entries: &[i64]) -> RatVec {
    entries.iter().map(|&n| int(n)).collect()
}

pub fn zero_vec(dim: usize) -> RatVec {
    vec![Rational::zero(); dim]
}

/// Parses `"p/q"` or `"p"`. Whitespace around the value is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad_rational(text))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_rational(text))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(t.parse().map_err(|_| bad_rational(text))?),
    };
    Ok(parsed)
}

fn bad_rational(text: &str) -> Error {
    Error::Parse(format!("not a rational number: {text:?}"))
}

/// Formats as `"p/q"`, omitting `/q` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range magnitudes; go through the decimal expansion.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn vec_to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Best rational approximation of `x` with denominator at most `max_denom`,
/// from the continued-fraction convergents and semiconvergents.
pub fn rationalize(x: f64, max_denom: u64) -> Rational {
    assert!(x.is_finite(), "cannot rationalize {x}");
    let exact = Rational::from_float(x).expect("finite float");
    if exact.denom() <= &BigInt::from(max_denom) {
        return exact;
    }
    let limit = BigInt::from(max_denom);
    // Convergents p/q of the exact dyadic value.
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    loop {
        let a = rest.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > limit {
            // Largest semiconvergent that still fits.
            let k = (&limit - &q0) / &q1;
            let ps = &k * &p1 + &p0;
            let qs = &k * &q1 + &q0;
            let conv = Rational::new(p1.clone(), q1.clone());
            if qs.is_zero() {
                return conv;
            }
            let semi = Rational::new(ps, qs);
            let dc = (&conv - &exact).abs();
            let ds = (&semi - &exact).abs();
            return if ds < dc { semi } else { conv };
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            return Rational::new(p1, q1);
        }
        rest = frac.recip();
    }
}

/// Exact square root when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Rational], b: &[Rational]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> RatVec {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}
