//! Shared helpers for the integration tests.
#![allow(dead_code)]

use auxetic::analysis::InfDeformation;
use auxetic::generator::{builtin_kagome, builtin_pseudotriangulation, builtin_tetrahedral, generate, GeneratorConfig};
use auxetic::model::{EdgeOrbit, PeriodicFramework, QuotientMultigraph};
use auxetic::ratmath::{int, is_integer, rat, RatMatrix, RatVec, Rational};
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Strictly auxetic fixtures with a known certificate.
pub fn certified_fixtures() -> Vec<(&'static str, PeriodicFramework, InfDeformation)> {
    let (k, kd) = builtin_kagome();
    let (t, tc) = builtin_tetrahedral(&rat(12, 5), &rat(6, 5)).unwrap();
    let (p, pc) = builtin_pseudotriangulation();
    let g = generate(&QuotientMultigraph::complete(3, 2).unwrap(), 3, &GeneratorConfig::with_seed(7)).unwrap();
    vec![
        ("kagome", k, kd),
        ("tetrahedral", t, tc.deformation),
        ("pseudotriangulation", p, pc.deformation),
        ("generated-k3x2-3d", g.framework, g.certificate.deformation),
    ]
}

/// Integer matrix with determinant ±1.
pub fn is_unimodular(b: &RatMatrix) -> bool {
    (0..b.rows()).all(|i| (0..b.cols()).all(|j| is_integer(&b[(i, j)]))) && b.det().abs() == Rational::one()
}

pub fn small_rational(rng: &mut ChaCha8Rng, bound: i64, den: i64) -> Rational {
    let d = rng.random_range(1..=den);
    rat(rng.random_range(-bound * d..=bound * d), d)
}

/// Random invertible rational `d × d` matrix.
pub fn random_invertible(rng: &mut ChaCha8Rng, d: usize) -> RatMatrix {
    loop {
        let m = RatMatrix::from_fn(d, d, |_, _| small_rational(rng, 3, 4));
        if !num_traits::Zero::is_zero(&m.det()) {
            return m;
        }
    }
}

/// Random positive definite Gram matrix `AᵗA + I/4`.
pub fn random_gram(rng: &mut ChaCha8Rng, d: usize) -> RatMatrix {
    let a = RatMatrix::from_fn(d, d, |_, _| small_rational(rng, 2, 3));
    a.transpose().mul(&a).add(&RatMatrix::identity(d).scale(&rat(1, 4)))
}

/// Unvalidated random framework: loops, collinear representatives and
/// disconnected quotients all occur.
pub fn random_framework(seed: u64) -> PeriodicFramework {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = 2;
    let n = rng.random_range(1..=3usize);
    let unknowns = d * (n - 1) + 3;
    let m = rng.random_range(unknowns.saturating_sub(3).max(1)..=unknowns);
    let gram = random_gram(&mut rng, d);
    let vertices: Vec<RatVec> = (1..n).map(|_| (0..d).map(|_| small_rational(&mut rng, 1, 4)).collect()).collect();
    let edges = (0..m)
        .map(|_| {
            let from = rng.random_range(0..n);
            let to = rng.random_range(0..n);
            let shift: Vec<i64> = (0..d).map(|_| rng.random_range(-1..=1)).collect();
            EdgeOrbit::new(from, to, &shift)
        })
        .collect();
    PeriodicFramework::from_parts_unchecked(d, None, Some(gram), vertices, edges).unwrap()
}

pub fn half() -> Rational {
    int(1) / int(2)
}
