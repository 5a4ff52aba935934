use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};

use super::{add, dot, norm_sq, rational_sqrt, scale, sub, to_f64, vec_to_f64, RatVec, Rational};
use crate::{Error, Result};

/// A sphere with rational center and squared radius, together with one
/// rational point on it (the projection pole).
///
/// Points are produced by inverse stereographic projection from the pole
/// onto the hyperplane through the center orthogonal to `pole − center`.
/// Rational parameters give rational points, and every rational point other
/// than the pole is hit by exactly one parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSphere {
    center: RatVec,
    radius_sq: Rational,
    pole: RatVec,
    /// Rational basis of the hyperplane orthogonal to `pole − center`.
    tangent: Vec<RatVec>,
}

impl RationalSphere {
    /// Sphere through `pole` with the given center.
    pub fn through(center: RatVec, pole: RatVec) -> Result<Self> {
        if center.len() != pole.len() || center.len() < 2 {
            return Err(Error::usage("sphere center and pole must share a dimension >= 2"));
        }
        let u = sub(&pole, &center);
        let radius_sq = norm_sq(&u);
        if radius_sq.is_zero() {
            return Err(Error::usage("sphere has zero radius"));
        }
        let tangent = orthogonal_basis(&u);
        Ok(RationalSphere {
            center,
            radius_sq,
            pole,
            tangent,
        })
    }

    /// Sphere with a rational radius, projected from its north pole
    /// `center + r·e_d`.
    pub fn with_rational_radius(center: RatVec, radius_sq: Rational) -> Result<Self> {
        if !radius_sq.is_positive() {
            return Err(Error::usage("squared radius must be positive"));
        }
        let r = rational_sqrt(&radius_sq).ok_or_else(|| {
            Error::usage(format!(
                "radius sqrt({radius_sq}) is irrational; construct the sphere through a known rational point"
            ))
        })?;
        let mut pole = center.clone();
        *pole.last_mut().ok_or_else(|| Error::usage("empty center"))? += r;
        Self::through(center, pole)
    }

    /// Sphere having the segment `a b` as a diameter, projected from `a`.
    pub fn on_diameter(a: &[Rational], b: &[Rational]) -> Result<Self> {
        let half = Rational::new(1.into(), 2.into());
        let center = scale(&add(a, b), &half);
        Self::through(center, a.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[Rational] {
        &self.center
    }

    pub fn radius_sq(&self) -> &Rational {
        &self.radius_sq
    }

    pub fn pole(&self) -> &[Rational] {
        &self.pole
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        norm_sq(&sub(p, &self.center)) == self.radius_sq
    }

    /// The point with the given `(d−1)`-dimensional parameter. Parameter zero
    /// gives the antipode of the pole. The pole itself is never returned.
    pub fn point(&self, parameter: &[Rational]) -> Result<RatVec> {
        if parameter.len() + 1 != self.dim() {
            return Err(Error::usage(format!(
                "sphere in dimension {} needs {} parameters, got {}",
                self.dim(),
                self.dim() - 1,
                parameter.len()
            )));
        }
        let u = sub(&self.pole, &self.center);
        // w = (equatorial point) − pole; never zero because u ⟂ tangent.
        let mut w: RatVec = u.iter().map(|x| -x).collect();
        for (t, b) in parameter.iter().zip(&self.tangent) {
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi += t * bi;
            }
        }
        let two = Rational::from_integer(2.into());
        let s = &two * &self.radius_sq / norm_sq(&w);
        Ok(add(&self.pole, &scale(&w, &s)))
    }

    /// Float inverse of [`point`](Self::point): the parameter whose image is
    /// the given point of the sphere. Used to aim at targets.
    pub fn parameter_of(&self, x: &[f64]) -> Option<Vec<f64>> {
        let c = vec_to_f64(&self.center);
        let p = vec_to_f64(&self.pole);
        let u: Vec<f64> = p.iter().zip(&c).map(|(a, b)| a - b).collect();
        let r2 = to_f64(&self.radius_sq);
        let dir: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a - b).collect();
        let denom: f64 = dir.iter().zip(&u).map(|(a, b)| a * b).sum();
        if denom.abs() < 1e-300 {
            return None;
        }
        let s = -r2 / denom;
        let y: Vec<f64> = p
            .iter()
            .zip(&dir)
            .zip(&c)
            .map(|((pi, di), ci)| pi + s * di - ci)
            .collect();
        let d = self.dim();
        let b = DMatrix::from_fn(d, d - 1, |i, k| to_f64(&self.tangent[k][i]));
        let rhs = b.transpose() * DVector::from_vec(y);
        let t = (b.transpose() * &b).lu().solve(&rhs)?;
        Some(t.iter().copied().collect())
    }
}

/// `d − 1` independent rational vectors orthogonal to `u` (`u ≠ 0`).
///
/// With `j` the index of the largest `|u_j|`, vector `k` is
/// `|u_j|·e_k − sign(u_j)·u_k·e_j`. For `u` along a coordinate axis this is
/// the positively oriented scaled coordinate frame.
fn orthogonal_basis(u: &[Rational]) -> Vec<RatVec> {
    let j = (0..u.len())
        .max_by(|&a, &b| u[a].abs().cmp(&u[b].abs()).then(b.cmp(&a)))
        .expect("nonempty");
    let uj_abs = u[j].abs();
    let sign = if u[j].is_negative() {
        -Rational::from_integer(1.into())
    } else {
        Rational::from_integer(1.into())
    };
    (0..u.len())
        .filter(|&k| k != j)
        .map(|k| {
            let mut v = vec![Rational::zero(); u.len()];
            v[k] = uj_abs.clone();
            v[j] = -(&sign * &u[k]);
            debug_assert!(dot(&v, u).is_zero());
            v
        })
        .collect()
}

/// Point on the sphere `|x − center|² = radius_sq` at the given parameter,
/// projecting from the north pole `center + r·e_d`. Requires a rational
/// radius; for other spheres use [`RationalSphere::through`].
pub fn rational_sphere_point(
    center: &[Rational],
    radius_sq: &Rational,
    parameter: &[Rational],
) -> Result<RatVec> {
    RationalSphere::with_rational_radius(center.to_vec(), radius_sq.clone())?.point(parameter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, intvec, rat, rationalize, ratvec};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pythagorean_circle_point() {
        let s = RationalSphere::through(intvec(&[0, 0]), intvec(&[-1, 0])).unwrap();
        assert_eq!(s.point(&[rat(1, 2)]).unwrap(), ratvec(&[(3, 5), (4, 5)]));
    }

    #[test]
    fn unit_sphere_point() {
        let p = rational_sphere_point(&intvec(&[0, 0, 0]), &int(1), &[int(1), int(1)]).unwrap();
        assert_eq!(p, ratvec(&[(2, 3), (2, 3), (1, 3)]));
        assert_eq!(norm_sq(&p), int(1));
    }

    #[test]
    fn zero_parameter_is_antipode() {
        let s = RationalSphere::with_rational_radius(ratvec(&[(1, 2), (1, 3), (-2, 1)]), rat(9, 4)).unwrap();
        let p = s.point(&[int(0), int(0)]).unwrap();
        let antipode = sub(&scale(s.center(), &int(2)), s.pole());
        assert_eq!(p, antipode);
    }

    #[test]
    fn irrational_radius_needs_a_pole() {
        assert!(rational_sphere_point(&intvec(&[0, 0]), &int(2), &[int(1)]).is_err());
        let s = RationalSphere::through(intvec(&[0, 0]), intvec(&[1, 1])).unwrap();
        let p = s.point(&[rat(2, 7)]).unwrap();
        assert_eq!(norm_sq(&p), int(2));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(rational_sphere_point(&intvec(&[0, 0]), &int(-1), &[int(1)]).is_err());
        assert!(rational_sphere_point(&intvec(&[0, 0]), &int(1), &[int(1), int(2)]).is_err());
    }

    #[test]
    fn density_statistical() {
        // Aim at random float targets on a diameter sphere; a rationalized
        // parameter lands within 1e-6 every time.
        let s = RationalSphere::on_diameter(&ratvec(&[(-3, 2), (1, 5), (0, 1)]), &ratvec(&[(7, 3), (-1, 1), (5, 4)])).unwrap();
        let c = vec_to_f64(s.center());
        let r = to_f64(s.radius_sq()).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut dir: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
            dir.iter_mut().for_each(|x| *x /= n);
            let target: Vec<f64> = c.iter().zip(&dir).map(|(ci, di)| ci + r * di).collect();
            let t = s.parameter_of(&target).unwrap();
            let tr: Vec<Rational> = t.iter().map(|&x| rationalize(x, 1_000_000_000)).collect();
            let p = s.point(&tr).unwrap();
            assert!(s.contains(&p));
            let dist: f64 = vec_to_f64(&p)
                .iter()
                .zip(&target)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            assert!(dist < 1e-6, "missed target by {dist}");
        }
    }

    proptest! {
        #[test]
        fn points_lie_exactly_on_sphere(
            c in proptest::collection::vec((-5i64..=5, 1i64..=4), 3),
            pole in proptest::collection::vec((-5i64..=5, 1i64..=4), 3),
            t in proptest::collection::vec((-9i64..=9, 1i64..=7), 2),
        ) {
            let center = ratvec(&c);
            let pole = ratvec(&pole);
            prop_assume!(center != pole);
            let s = RationalSphere::through(center, pole).unwrap();
            let p = s.point(&ratvec(&t)).unwrap();
            prop_assert!(s.contains(&p));
            prop_assert_ne!(p.as_slice(), s.pole());
        }

        #[test]
        fn parameter_map_is_injective(a in (-20i64..20, 1i64..9), b in (-20i64..20, 1i64..9)) {
            let s = RationalSphere::through(intvec(&[1, 2]), intvec(&[4, 6])).unwrap();
            let (ta, tb) = (rat(a.0, a.1), rat(b.0, b.1));
            let pa = s.point(std::slice::from_ref(&ta)).unwrap();
            let pb = s.point(std::slice::from_ref(&tb)).unwrap();
            prop_assert_eq!(ta == tb, pa == pb);
        }
    }
}
